"""Module for transition channels, rate equations and Lindblad generators"""
