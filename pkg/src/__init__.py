# Calogero Polynomial Toolkit - Source Package
