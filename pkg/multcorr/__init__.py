#!/usr/bin/env python
'''
multcorr
========
GNU GENERAL PUBLIC LICENSE
                       Version 3, 29 June 2007

 Copyright (C) 2007 Free Software Foundation, Inc. <http://fsf.org/>
 Everyone is permitted to copy and distribute verbatim copies
of this license document, but changing it is not allowed.
========

multcorr is a suite of modules for numerical experiments on correlations of
multiplicative functions and on the largest prime factors of consecutive
integers. Estimates computed at a finite scale x are compared with the limiting
densities they should converge to.

subpackages:
sieve
    Segmented factor sieve and deterministic parallel scans over segments
arith
    Multiplicative functions, uniformity in progressions, logarithmic
    correlations and real character sums
dickmann
    The Dickman function and the integrals built from it
experiments
    Density estimates for events defined by P+(n), P+(n + 1), ... and their
    analytic targets
'''

__version__ = '1.0.0'
