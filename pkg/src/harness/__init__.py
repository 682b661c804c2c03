# Harness package