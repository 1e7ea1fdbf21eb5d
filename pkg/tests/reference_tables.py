"""Reference convergence ladders for the benchmark presets.

Each row is (level, error, observed_rate); rates are None on the first
row.  These are the published reference results the presets reproduce;
tolerances are +-10% on errors and the per-table rate bands used in
test_acceptance.  Row values follow the table convention: the entry at a
level is the distance to the previous (coarser) level, and spatial rows
measure in the row's own grid norm.
"""

# Example 1, temporal: sigma = 6/5, alpha = 1/2, J = 32; columns gamma.
TABLE1 = {
    0.0: [(16, 6.8176e-2, None), (32, 3.7830e-2, 0.85), (64, 1.9723e-2, 0.94),
          (128, 1.0068e-2, 0.97), (256, 5.1218e-3, 0.98)],
    0.5: [(16, 6.9243e-2, None), (32, 3.8277e-2, 0.86), (64, 1.9834e-2, 0.95),
          (128, 1.0070e-2, 0.98), (256, 5.1033e-3, 0.98)],
    1.0: [(16, 7.1339e-2, None), (32, 3.8885e-2, 0.88), (64, 1.9783e-2, 0.97),
          (128, 9.8847e-3, 1.00), (256, 4.9532e-3, 1.00)],
}

# Example 1, spatial: sigma = 2, N = 64; cells (alpha, gamma).
TABLE2 = {
    (0.5, 0.0): [(8, 4.6196e-4, None), (16, 1.0977e-4, 2.07),
                 (32, 2.6967e-5, 2.03), (64, 6.7104e-6, 2.01)],
    (0.5, 1.0): [(8, 5.9530e-4, None), (16, 1.4746e-4, 2.01),
                 (32, 3.6609e-5, 2.01), (64, 9.1337e-6, 2.00)],
    (0.5, 2.0): [(8, 1.3001e-3, None), (16, 3.3723e-4, 1.95),
                 (32, 8.4756e-5, 1.99), (64, 2.1212e-5, 2.00)],
    (1.0, 0.0): [(8, 8.5616e-3, None), (16, 2.3280e-3, 1.89),
                 (32, 5.9075e-4, 1.98), (64, 1.4819e-4, 2.00)],
    (1.0, 1.0): [(8, 8.3152e-3, None), (16, 2.2836e-3, 1.86),
                 (32, 5.8071e-4, 1.98), (64, 1.4574e-4, 1.99)],
    (1.0, 2.0): [(8, 7.6480e-3, None), (16, 2.1632e-3, 1.82),
                 (32, 5.5346e-4, 1.97), (64, 1.3911e-4, 1.99)],
}

# Example 2, temporal: alpha = 1/2, J = 64; columns sigma.
# The sigma = 1.5, N = 256 error entry is inconsistent with the reference's
# own rate column (both neighbours imply ~9.06e-4); it is kept verbatim and
# still reproduced within the 10% band.
TABLE3 = {
    1.5: [(128, 1.5816e-3, None), (256, 9.9110e-4, 0.80),
          (512, 4.8755e-4, 0.90), (1024, 2.5027e-4, 0.96)],
    2.0: [(128, 1.4340e-3, None), (256, 8.5286e-4, 0.75),
          (512, 4.6378e-4, 0.88), (1024, 2.3987e-4, 0.95)],
    2.5: [(128, 1.3409e-3, None), (256, 8.2030e-4, 0.71),
          (512, 4.5227e-4, 0.86), (1024, 2.3552e-4, 0.94)],
    3.0: [(128, 1.2944e-3, None), (256, 8.1102e-4, 0.67),
          (512, 4.5221e-4, 0.84), (1024, 2.3682e-4, 0.93)],
}

# Example 2, spatial: N = 64; cells (sigma, alpha).
TABLE4 = {
    (1.5, 0.3): [(16, 1.1603e-4, None), (32, 3.0157e-5, 1.94),
                 (64, 7.5083e-6, 2.01), (128, 1.8266e-6, 2.04)],
    (1.5, 0.7): [(16, 1.4705e-4, None), (32, 3.1429e-5, 2.23),
                 (64, 7.4072e-6, 2.09), (128, 1.7679e-6, 2.07)],
    (3.0, 0.3): [(16, 1.0040e-4, None), (32, 2.7010e-5, 1.89),
                 (64, 6.8769e-6, 1.97), (128, 1.7312e-6, 1.99)],
    (3.0, 0.7): [(16, 1.7507e-4, None), (32, 3.8881e-5, 2.17),
                 (64, 9.3905e-6, 2.05), (128, 2.3169e-6, 2.02)],
}
