# relucert/domain/__init__.py
