"""Exact-rational Gromov-width bounds for spatial polygon moduli spaces.

The public surface groups into:

* `lengths`   -- combinatorics of length vectors (genericity, short sets,
                 chambers, the conjectured width formula);
* `polytopes` -- exact convex polytopes, normal fans, Fano and blowup tests;
* `bending`   -- moment polytopes of the bending torus actions;
* `width`     -- lower bounds by cross fitting, upper bounds by relation /
                 blowup / facet certificates, and full width reports;
* `volume`    -- the combinatorial volume formula and its cross-checks;
* `cli`       -- command line front end and the seeded verification harness.
"""

from .lengths import LengthVector
from .width import WidthReport, gromov_width_report

__version__ = "0.1.0"

__all__ = ["LengthVector", "WidthReport", "gromov_width_report", "__version__"]
