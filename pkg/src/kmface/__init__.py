"""Kac-Moody Weyl groups, Tits cone faces, face monoids and the apartment action."""
