"""Published reference scores for four attribution/editing systems.

Each row: (config, dataset, system, attr_r, attr_p, pres, f1_pp, f1_rp).
Used only to check that the harmonic-mean implementation reproduces the
printed F1 columns from their printed inputs.
"""

REFERENCE_ROWS = [
    # config A
    ("A", "nq", "efec", 0.598, 0.042, 0.762, 0.080, 0.670),
    ("A", "nq", "ccver", 0.624, 0.066, 0.928, 0.123, 0.747),
    ("A", "nq", "rarr", 0.649, 0.058, 0.868, 0.109, 0.743),
    ("A", "nq", "are", 0.670, 0.756, 0.910, 0.826, 0.772),
    ("A", "mintaka", "efec", 0.557, 0.040, 0.729, 0.076, 0.632),
    ("A", "mintaka", "ccver", 0.630, 0.069, 0.937, 0.129, 0.753),
    ("A", "mintaka", "rarr", 0.646, 0.060, 0.850, 0.112, 0.734),
    ("A", "mintaka", "are", 0.716, 0.807, 0.914, 0.857, 0.803),
    ("A", "strategyqa", "efec", 0.354, 0.049, 0.716, 0.092, 0.474),
    ("A", "strategyqa", "ccver", 0.372, 0.047, 0.932, 0.089, 0.532),
    ("A", "strategyqa", "rarr", 0.356, 0.097, 0.862, 0.174, 0.504),
    ("A", "strategyqa", "are", 0.463, 0.559, 0.899, 0.689, 0.611),
    ("A", "expertqa", "efec", 0.343, 0.071, 0.686, 0.129, 0.457),
    ("A", "expertqa", "ccver", 0.292, 0.071, 0.967, 0.132, 0.449),
    ("A", "expertqa", "rarr", 0.340, 0.078, 0.904, 0.144, 0.494),
    ("A", "expertqa", "are", 0.412, 0.438, 0.917, 0.593, 0.569),
    # config B
    ("B", "nq", "efec", 0.492, 0.053, 0.688, 0.098, 0.546),
    ("B", "nq", "ccver", 0.563, 0.051, 0.931, 0.097, 0.702),
    ("B", "nq", "rarr", 0.493, 0.080, 0.904, 0.147, 0.638),
    ("B", "nq", "are", 0.623, 0.722, 0.902, 0.802, 0.737),
    ("B", "mintaka", "efec", 0.497, 0.049, 0.698, 0.092, 0.581),
    ("B", "mintaka", "ccver", 0.634, 0.045, 0.933, 0.086, 0.755),
    ("B", "mintaka", "rarr", 0.508, 0.058, 0.899, 0.109, 0.649),
    ("B", "mintaka", "are", 0.634, 0.755, 0.881, 0.813, 0.737),
    ("B", "strategyqa", "efec", 0.330, 0.071, 0.638, 0.128, 0.435),
    ("B", "strategyqa", "ccver", 0.341, 0.056, 0.961, 0.106, 0.503),
    ("B", "strategyqa", "rarr", 0.292, 0.079, 0.916, 0.145, 0.443),
    ("B", "strategyqa", "are", 0.413, 0.469, 0.904, 0.618, 0.567),
    ("B", "expertqa", "efec", 0.297, 0.075, 0.635, 0.134, 0.405),
    ("B", "expertqa", "ccver", 0.310, 0.062, 0.980, 0.117, 0.471),
    ("B", "expertqa", "rarr", 0.269, 0.064, 0.944, 0.120, 0.419),
    ("B", "expertqa", "are", 0.387, 0.414, 0.914, 0.570, 0.544),
    # config C
    ("C", "nq", "efec", 0.490, 0.058, 0.717, 0.107, 0.582),
    ("C", "nq", "ccver", 0.597, 0.071, 0.921, 0.132, 0.724),
    ("C", "nq", "rarr", 0.646, 0.060, 0.850, 0.112, 0.734),
    ("C", "nq", "are", 0.682, 0.739, 0.898, 0.811, 0.759),
    ("C", "mintaka", "efec", 0.538, 0.057, 0.728, 0.106, 0.619),
    ("C", "mintaka", "ccver", 0.582, 0.073, 0.901, 0.135, 0.707),
    ("C", "mintaka", "rarr", 0.651, 0.065, 0.829, 0.121, 0.729),
    ("C", "mintaka", "are", 0.712, 0.767, 0.887, 0.823, 0.790),
    ("C", "strategyqa", "efec", 0.319, 0.051, 0.666, 0.095, 0.432),
    ("C", "strategyqa", "ccver", 0.435, 0.063, 0.917, 0.118, 0.590),
    ("C", "strategyqa", "rarr", 0.449, 0.073, 0.846, 0.134, 0.586),
    ("C", "strategyqa", "are", 0.474, 0.502, 0.907, 0.646, 0.623),
    ("C", "expertqa", "efec", 0.356, 0.076, 0.698, 0.137, 0.472),
    ("C", "expertqa", "ccver", 0.282, 0.081, 0.942, 0.149, 0.434),
    ("C", "expertqa", "rarr", 0.400, 0.084, 0.851, 0.153, 0.544),
    ("C", "expertqa", "are", 0.425, 0.417, 0.924, 0.575, 0.582),
    # config D
    ("D", "nq", "efec", 0.357, 0.058, 0.719, 0.107, 0.477),
    ("D", "nq", "ccver", 0.423, 0.068, 0.813, 0.126, 0.539),
    ("D", "nq", "rarr", 0.516, 0.066, 0.594, 0.119, 0.552),
    ("D", "nq", "are", 0.584, 0.682, 0.926, 0.785, 0.716),
    ("D", "mintaka", "efec", 0.498, 0.029, 0.739, 0.056, 0.595),
    ("D", "mintaka", "ccver", 0.397, 0.036, 0.850, 0.069, 0.541),
    ("D", "mintaka", "rarr", 0.543, 0.058, 0.679, 0.107, 0.603),
    ("D", "mintaka", "are", 0.631, 0.706, 0.940, 0.806, 0.755),
    ("D", "strategyqa", "efec", 0.361, 0.031, 0.721, 0.059, 0.481),
    ("D", "strategyqa", "ccver", 0.323, 0.058, 0.854, 0.109, 0.468),
    ("D", "strategyqa", "rarr", 0.412, 0.057, 0.604, 0.104, 0.490),
    ("D", "strategyqa", "are", 0.484, 0.533, 0.912, 0.673, 0.633),
    ("D", "expertqa", "efec", 0.357, 0.058, 0.719, 0.107, 0.477),
    ("D", "expertqa", "ccver", 0.212, 0.064, 0.845, 0.119, 0.339),
    ("D", "expertqa", "rarr", 0.353, 0.074, 0.606, 0.132, 0.446),
    ("D", "expertqa", "are", 0.390, 0.386, 0.942, 0.548, 0.552),
]
