"""Numeric tolerances shared by the witness search, the criteria and the simulator."""

# "v << 0" means every component <= -STRICT_TOL * scale * ||xi||_1
STRICT_TOL = 1e-10

# Perron roots this close to the stability boundary count as infeasible
FEASIBILITY_TOL = 1e-9

ROOT_TOL = 1e-12

POWER_ITERATION_TOL = 1e-13
POWER_ITERATION_CAP = 100_000

# smallest admissible component of an l1-normalised witness
WITNESS_FLOOR = 1e-12

# discrete rates are searched in [LAMBDA_FLOOR, 1 - LAMBDA_FLOOR]
LAMBDA_FLOOR = 1e-9

# bracket doubling for alpha roots stops after this many doublings
BRACKET_DOUBLING_CAP = 200

ENVELOPE_SLACK = 0.05
ENVELOPE_TAIL_FRACTION = 0.6
