"""Module for dense linear algebra and time integration"""
