"""
Integration tests for mu_lab.
"""