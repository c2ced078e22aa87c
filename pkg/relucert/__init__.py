"""
relucert - complete robustness verifier for feedforward ReLU classifiers.
"""
__version__ = "1.0.0"
