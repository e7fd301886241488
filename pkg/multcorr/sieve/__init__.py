#!/usr/bin/env python
''''
sieve
=====
<sieve> factors every integer of a range [lo, hi) segment by segment
(<factor_sieve>) and fans kernels out over the segments with a pool of worker
processes (<segments>), merging partial sums in segment order so that results
do not depend on the number of workers.
'''
