"""
Constants used by SliceMarket
"""
APPNAME = "SliceMarket"
APPAUTHOR = "SliceMarket Developers"

# Domain indices, ordered along every routing path:
RAN = 1
CRAN = 2
CN = 3
DOMAINS = (RAN, CRAN, CN)
DOMAIN_NAMES = {RAN: "ran", CRAN: "cran", CN: "cn"}

# Capacity constraints are checked relative to capacity:
FEASIBILITY_TOLERANCE = 1e-9

# Relative band for "least expensive path" ties:
TIE_TOLERANCE = 1e-9

# Paths carrying less than this fraction of their area's traffic count
# as idle:
ACTIVE_PATH_FRACTION = 1e-12

# Utility reference point z0 = phi * Z0_FRACTION:
Z0_FRACTION = 0.01

# Slack for sharing-incentive and envy comparisons:
FAIRNESS_SLACK = 1e-9

# Demand data quoted per 100 Mb/s is rescaled to per Gb/s:
PER_100MBPS_TO_PER_GBPS = 10.0

CENTS_PER_DOLLAR = 100.0

CSV_FLOAT_FORMAT = "%.9g"
