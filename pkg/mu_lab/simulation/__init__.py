"""
Monte Carlo harness: sampling, trials and reports.
"""
