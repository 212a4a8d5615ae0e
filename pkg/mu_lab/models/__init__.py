"""
Models package for mu_lab.
"""
