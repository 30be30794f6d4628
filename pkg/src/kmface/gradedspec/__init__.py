"""Tabulated graded algebras and the truncated finite-type Cartan algebra."""
