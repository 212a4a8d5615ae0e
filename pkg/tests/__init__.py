"""
Test package for mu_lab.
"""