"""Enumerate two-level graphs of the quadratic stratum (2,2,(2,2)), lift them
to canonical covers and check the dimension count on each."""
from kmsdiff.boundary import enumerate_boundary_graphs
from kmsdiff.covers import enumerate_covers
from kmsdiff.prongs import twist_report
from kmsdiff.residues import check_dimension_identity, pper_coordinate_shape
from kmsdiff.stratum import Signature, cover_signature, stratum_dimension

sig = Signature(2, 2, (2, 2))
cs = cover_signature(sig)
print(f"stratum {sig.k},{sig.g},{sig.mu}: dim {stratum_dimension(sig)}, "
      f"cover orders {cs.mu_hat}, cover genus {cs.g_hat}")

for n, G in enumerate(enumerate_boundary_graphs(sig, "two_level")):
    print(f"graph {n}: genera {G.genera}, levels {G.levels}, "
          f"edge enhancements {[e.kappas[0] for e in G.edges]}")
    for C in enumerate_covers(G):
        rep = check_dimension_identity(C)
        per_level = [sum(l["dims"]) - l["grc_rank"] for l in rep["per_level"]]
        tw = twist_report(C)
        print(f"  d={C.d} shifts={C.shifts}: levels {per_level} sum {rep['total']}, "
              f"coordinates {pper_coordinate_shape(C)['reduced_dims']}, "
              f"Tw det {tw['tw_det']}, K {tw['K']}")
