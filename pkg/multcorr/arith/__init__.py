#!/usr/bin/env python
''''
arith
=====
Bounded real multiplicative functions and the averages built from them:

    1. Mean values, logarithmic means and the pretentious distance (<multfunc>)
    2. Equidistribution in residue classes (<uniformity>)
    3. Logarithmically averaged binary correlations (<correlate>)
    4. Jacobi symbols, Burgess-type correlations of real characters and pairs of
    consecutive quadratic non-residues (<charsum>)
'''
