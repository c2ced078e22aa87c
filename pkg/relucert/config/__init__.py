# relucert/config/__init__.py
