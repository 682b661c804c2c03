# Loaders package