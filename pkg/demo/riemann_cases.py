import logging

import dswlab
from dswlab import hydro, riemann
from dswlab.models import DispersionlessPair, MonotonicityBranch, StepData

log = logging.getLogger("dswlab")

log.setLevel(logging.DEBUG)
handler = logging.StreamHandler()
handler.setFormatter(
    logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
)
log.addHandler(handler)

CASES = {
    "A": ((1.0, 2.0), (0.25, 0.5)),
    "B": ((0.5, 2.0), (0.25, 1.0)),
    "C": ((0.25, 2.0), (0.5, 1.0)),
    "D": ((0.5, 1.0), (0.25, 2.0)),
    "E": ((0.25, 1.0), (0.5, 2.0)),
    "F": ((0.25, 0.5), (1.0, 2.0)),
}


def state(invariants):
    return hydro.state_from_invariants(DispersionlessPair(*invariants), MonotonicityBranch.UPPER)


if __name__ == "__main__":
    config = dswlab.RunConfig()
    for name, (left, right) in CASES.items():
        pattern = riemann.build_pattern(StepData(state(left), state(right)), config)
        print(name, pattern, ["{0:.4f}".format(s) for s in pattern.edge_speeds])
