# Conformity package