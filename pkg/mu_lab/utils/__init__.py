"""
Utils package for mu_lab.
"""
