"""Exact harmonic analysis on valued-field wave packets.

The package models volumes of balls, additive characters and Schwartz
functions on VF^n symbolically, integrates them exactly, and checks Fourier,
distribution and Weil representation identities against a p-adic oracle.
"""
from .valfield import QI, RV, VF, t_pow
from .motvalues import CElem, Mot, mot_c, mot_e, mot_o
from .geometry import Ball, Form, Polyball, cball, oball
from .wavefn import MotFn, chi, expchar
from .integrator import MuFn, convolve, integrate
from .fourier import fourier, fourier0
from .dsl import eval_expr, parse, parse_fn

__all__ = [
    "QI", "RV", "VF", "t_pow", "CElem", "Mot", "mot_c", "mot_e", "mot_o", "Ball", "Form",
    "Polyball", "cball", "oball", "MotFn", "chi", "expchar", "MuFn", "convolve", "integrate",
    "fourier", "fourier0", "eval_expr", "parse", "parse_fn",
]
