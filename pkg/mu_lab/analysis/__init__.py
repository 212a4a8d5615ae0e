"""
Group arithmetic, transforms, counting, bounds and maximization.
"""
