# backend/controllers/__init__.py
