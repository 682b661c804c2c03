# Reproduction package