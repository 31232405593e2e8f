# Namespace package - __init__.py cannot contain anything else
__path__ = __import__("pkgutil").extend_path(__path__, __name__)
