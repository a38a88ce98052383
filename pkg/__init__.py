"""
dlp-qubo: discrete logarithms over GF(2^n) in type-II optimal normal bases,
reduced to QUBO problems and solved classically.
"""
