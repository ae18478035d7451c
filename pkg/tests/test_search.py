import itertools

import numpy as np
import pytest

from glmaps import make_field
from glmaps.commutation import GENERATORS, check_gl_mapping, vector_table
from glmaps.errors import TooLarge
from glmaps.linalg import enumerate_gl, matvec, vector_space
from glmaps.search import Gf2Kernel, _decode, exhaustive_theorem1_search, table_index

F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)


def test_table_index_inverts_decode():
    for t in (0, 1, 12345, 8**8 - 1):
        assert table_index(_decode(t, 8, 8), 8) == t


def test_gf2_squared_sweep_is_exploratory():
    rep = exhaustive_theorem1_search(F2, 2, F2, 2)
    assert rep.tables_scanned == 256
    assert rep.nontrivial_gl_dim_le_n == 6 == rep.gl_order
    assert rep.trivial_gl_dim_le_n == 16
    assert rep.all_strong and rep.theorem_holds
    assert any("n < 3" in flag for flag in rep.flags)


def test_thread_count_does_not_change_report():
    a = exhaustive_theorem1_search(F2, 2, F2, 3, threads=1, chunk=97)
    b = exhaustive_theorem1_search(F2, 2, F2, 3, threads=4, chunk=97)
    c = exhaustive_theorem1_search(F2, 2, F2, 3, threads=2)
    assert a.to_json(timing=False) == b.to_json(timing=False) == c.to_json(timing=False)


def test_kernel_matches_reference_on_a_slice_of_gf2_cubed():
    kernel = Gf2Kernel(F2, 3, 3)
    rng = np.random.default_rng(1)
    t = rng.integers(0, 8**8, size=3000)
    # plant the linear automorphism identity and a trivial table
    t[:2] = [table_index(list(range(8)), 8), table_index([0] + [5] * 7, 8)]
    fast = kernel.is_gl(t)
    assert fast[0] and fast[1]
    for ti, k in zip(t, fast):
        g = vector_table(F2, 3, F2, 3, _decode(int(ti), 8, 8))
        assert check_gl_mapping(g, GENERATORS, verdict=False).is_gl_mapping == bool(k)


def test_kernel_chunks_agree_with_whole_range():
    kernel = Gf2Kernel(F2, 2, 3)
    whole = kernel.run(0, 8**4)
    parts = [kernel.run(s, s + 512) for s in range(0, 8**4, 512)]
    assert whole.dim_le_n == sum(p.dim_le_n for p in parts)
    assert list(whole.nontrivial_gl) == [int(x) for p in parts for x in p.nontrivial_gl]


def test_non_gf2_codomain_uses_reference_pipeline():
    rep = exhaustive_theorem1_search(F3, 1, F3, 2)
    assert rep.tables_scanned == 9**3
    # brute force: look for u' in all of GL(2,3) for both elements of GL(1,3)
    cod, group = vector_space(F3, 2), list(enumerate_gl(2, F3))
    trivial = nontrivial = 0
    for codes in itertools.product(range(9), repeat=3):
        g = [cod.decode(c) for c in codes]
        if vector_table(F3, 1, F3, 2, codes).image_span().dim > 1:
            continue
        swap = [0, 2, 1]  # multiplication by 2 on GF(3)^1
        if any(all(matvec(v, g[x], F3) == g[swap[x]] for x in range(3)) for v in group):
            if g[1] == g[2]:
                trivial += 1
            else:
                nontrivial += 1
    assert (rep.trivial_gl_dim_le_n, rep.nontrivial_gl_dim_le_n) == (trivial, nontrivial)
    assert rep.all_strong


def test_sampled_mode_is_seeded():
    a = exhaustive_theorem1_search(F2, 3, F2, 4, mode="sampled", samples=300, seed=9)
    b = exhaustive_theorem1_search(F2, 3, F2, 4, mode="sampled", samples=300, seed=9)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert a.seed == 9 and a.tables_scanned == 300


def test_guard_refuses_infeasible_sweeps():
    with pytest.raises(TooLarge):
        exhaustive_theorem1_search(F2, 3, F2, 4)
    with pytest.raises(TooLarge):
        exhaustive_theorem1_search(F2, 2, F4, 3)
    with pytest.raises(ValueError):
        exhaustive_theorem1_search(F2, 2, F2, 2, mode="bogus")


def test_report_json_omits_timing_on_request():
    rep = exhaustive_theorem1_search(F2, 2, F2, 2)
    assert "wall_time_s" in rep.to_json()
    assert "wall_time_s" not in rep.to_json(timing=False)
    assert rep.to_json()["nontrivial_tables"] == rep.nontrivial_tables
