"""Module for steady state solvers"""
