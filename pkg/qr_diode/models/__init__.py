"""Module for model Hamiltonians and bath coupling operators"""
