#!/usr/bin/env python
'''Step-halving study of the tabulated Dickman function. For each u given on
the command line, prints rho(u) from tables with steps h, h/2 and h/4, the
observed order of convergence and the Richardson extrapolated value.

    rho_convergence.py step u1 u2 ...

The step comes first and is required, e.g. rho_convergence.py 0.01 1.5 3 5.
'''

import math
import sys

from multcorr.dickmann import rho
from multcorr.utilities.output import format_float


def main(argv):

    if len(argv) < 2:
        sys.stderr.write(__doc__)
        sys.exit(2)

    step = float(argv[0])
    u_values = [float(v) for v in argv[1:]]
    u_max = max(2., math.ceil(max(u_values)) + 1.)

    tables = [rho.build_rho(step/2**i, u_max) for i in range(3)]

    print('u,rho_h,rho_h/2,rho_h/4,order,extrapolated')
    for u in u_values:
        coarse, mid, fine = (rho.rho_at(table, u) for table in tables)
        if mid != fine and coarse != mid:
            order = math.log2(abs(coarse - mid)/abs(mid - fine))
        else:
            order = float('nan')
        extrapolated = (16.*fine - mid)/15.
        print(','.join(format_float(v) for v in (u, coarse, mid, fine, order, extrapolated)))

if __name__ == "__main__":
    main(sys.argv[1:])
