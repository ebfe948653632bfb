"""Services building, evaluating and checking wave-packet polynomials."""
