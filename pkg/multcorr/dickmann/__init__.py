#!/usr/bin/env python
''''
dickmann
========
Tabulation of the Dickman function rho (<rho>) and the integrals of rho that
give the limiting densities of the large prime factor events (<integrals>).
'''
