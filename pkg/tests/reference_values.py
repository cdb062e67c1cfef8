"""Published reference values used as test oracles."""

# (lambda, r) -> (mu, sigma2), four decimals
CLT_TABLE = {
    (1, 1): (0.3333, 0.0556),
    (1, 2): (0.3484, 0.0719),
    (1, 3): (0.3582, 0.0852),
    (2, 1): (0.2764, 0.0447),
    (2, 2): (0.3172, 0.0643),
    (2, 3): (0.3364, 0.0791),
    (3, 1): (0.2500, 0.0442),
    (3, 2): (0.2983, 0.0631),
    (3, 3): (0.3215, 0.0778),
    (4, 1): (0.2367, 0.0469),
    (4, 2): (0.2865, 0.0651),
    (4, 3): (0.3113, 0.0793),
}

# name -> ((A, U, C, G), p0, pbar0), three decimals
RATIO_TABLE = {
    "mRNA": (("0.412", "0.265", "0.110", "0.213"), "0.375", "0.375"),
    "tRNA": (("0.189", "0.201", "0.292", "0.318"), "0.481", "0.493"),
    "5S ribosomal RNA": (("0.208", "0.165", "0.304", "0.323"), "0.470", "0.470"),
    "16S ribosomal RNA": (("0.214", "0.165", "0.268", "0.353"), "0.433", "0.433"),
    "23S ribosomal RNA": (("0.246", "0.180", "0.244", "0.330"), "0.424", "0.424"),
    "Bacteria": (("0.238", "0.197", "0.247", "0.317"), "0.444", "0.444"),
    "Eukaryota": (("0.232", "0.237", "0.238", "0.293"), "0.470", "0.475"),
    "Viruses": (("0.182", "0.205", "0.298", "0.315"), "0.480", "0.497"),
    "RNA": (("0.208", "0.200", "0.271", "0.321"), "0.471", "0.471"),
}
