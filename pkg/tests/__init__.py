"""Tests for qr_diode"""
