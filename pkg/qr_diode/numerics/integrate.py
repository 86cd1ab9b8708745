"""Fixed step Runge-Kutta integration for the time-evolution oracle"""
import numpy as np

from qr_diode.utils.errors import DomainError


def rk4_step(f, y, dt):
    """
    One classical 4th order Runge-Kutta step of dy/dt = f(y)

    :param function f: derivative map, f(y) -> dy/dt
    :param np.ndarray y: state vector
    :param float dt: time step
    :return np.ndarray: state after dt
    :raise DomainError: if dt <= 0
    """
    if not dt > 0:
        raise DomainError('RK4 step must be positive, got {}'.format(dt))
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + dt / 6. * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_propagator(generator, dt):
    """
    Matrix performing one RK4 step of the linear system dy/dt = G y.
    For linear f the step is exactly the degree 4 Taylor polynomial of
    exp(G dt), so applying this matrix equals calling rk4_step.

    :param np.ndarray generator: square matrix G
    :param float dt: time step
    :return np.ndarray prop: I + hG + (hG)^2/2 + (hG)^3/6 + (hG)^4/24
    """
    if not dt > 0:
        raise DomainError('RK4 step must be positive, got {}'.format(dt))
    step = dt * np.asarray(generator)
    prop = np.eye(step.shape[0], dtype=step.dtype)
    term = prop
    for order in range(1, 5):
        term = term @ step / order
        prop = prop + term
    return prop


def propagate_linear(generator, y0, dt, n_steps, n_samples=200):
    """
    Apply n_steps RK4 steps of dy/dt = G y, returning intermediate samples.

    Steps are grouped into chunks between samples and each chunk is applied
    as a matrix power of the one-step propagator.

    :param np.ndarray generator: square matrix G
    :param np.ndarray y0: initial state
    :param float dt: time step
    :param int n_steps: total number of steps
    :param int n_samples: number of sampled states after y0
    :return list times, list states: sample times (starting at 0) and states
    """
    if n_steps < 1:
        raise DomainError('Need at least one step, got {}'.format(n_steps))
    n_samples = int(min(max(n_samples, 1), n_steps))
    prop = rk4_propagator(generator, dt)
    chunk, remainder = divmod(int(n_steps), n_samples)
    chunk_prop = np.linalg.matrix_power(prop, chunk)
    y = np.asarray(y0)
    steps_done = 0
    times = [0.]
    states = [y]
    for sample_idx in range(n_samples):
        y = chunk_prop @ y
        steps_done += chunk
        if sample_idx == n_samples - 1 and remainder > 0:
            y = np.linalg.matrix_power(prop, remainder) @ y
            steps_done += remainder
        times.append(steps_done * dt)
        states.append(y)
    return times, states
