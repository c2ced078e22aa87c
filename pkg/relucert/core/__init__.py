# relucert/core/__init__.py
