"""Minimal Euclidean ball enclosing a finite point set."""

from .schemas import Ball, KKTCertificate, PointSet
from .solver import brute_force_meb, kkt_certificate, minimax_objective, solve_meb

__all__ = [
    "PointSet",
    "Ball",
    "KKTCertificate",
    "minimax_objective",
    "solve_meb",
    "brute_force_meb",
    "kkt_certificate",
]
