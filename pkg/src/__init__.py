# Generalized barycentric coordinate form bases
__version__ = "0.1.0"
