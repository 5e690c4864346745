from fractions import Fraction
from itertools import product

import pytest

from coalform.errors import (
    DuplicateLabel,
    InvalidBounds,
    MissingPayoff,
    ScaleExceeded,
    StructureOutOfBounds,
    UnknownPlayer,
)
from coalform.game import Choice, GameSpec, build_game, choice_set, nested_specs, spec_from_payoff_tensor
from coalform.io import generate_pd
from coalform.partitions import CoalitionStructure, enumerate_structures

from conftest import JOINT, SEP
from corpus import random_family_spec

F = Fraction

# induced payoffs and final structure; rows player 1, columns player 2,
# both in order (separ,L) (separ,H) (joint,L) (joint,H)
INDUCED_TABLE = [
    [((0, 0), SEP), ((-5, 3), SEP), ((0, 0), SEP), ((-5, 3), SEP)],
    [((3, -5), SEP), ((-2, -2), SEP), ((3, -5), SEP), ((-2, -2), SEP)],
    [((0, 0), SEP), ((-5, 3), SEP), ((0, 0), JOINT), ((-5, 3), JOINT)],
    [((3, -5), SEP), ((-2, -2), SEP), ((3, -5), JOINT), ((-2, -2), JOINT)],
]


def test_pd_choice_sets(pd_game):
    expected = [Choice(SEP, "L"), Choice(SEP, "H"), Choice(JOINT, "L"), Choice(JOINT, "H")]
    assert list(choice_set(pd_game, 1)) == expected
    assert list(choice_set(pd_game, 2)) == expected
    with pytest.raises(UnknownPlayer):
        choice_set(pd_game, 3)


def test_induced_table(pd_game):
    g = pd_game.induced
    for a, b in product(range(4), repeat=2):
        pay, struct = INDUCED_TABLE[a][b]
        assert g.utility((a, b)) == tuple(F(v) for v in pay)
        assert g.outcome((a, b)).structure == struct
        assert all(isinstance(v, Fraction) for v in g.utility((a, b)))


def test_composition_identity(pd_game):
    g = pd_game.induced
    for prof in product(*pd_game.choice_sets):
        o = pd_game.mechanism.apply(prof)
        assert g.utility(prof) == pd_game.payoff(o.structure, o.labels)


def test_k1_is_raw_table(pd_k1):
    g = pd_k1.induced
    raw = {("L", "L"): (0, 0), ("L", "H"): (-5, 3), ("H", "L"): (3, -5), ("H", "H"): (-2, -2)}
    for prof in product(*pd_k1.choice_sets):
        assert g.utility(prof) == tuple(map(F, raw[(prof[0].label, prof[1].label)]))


def test_unanimous_profiles_read_payoffs_directly():
    import numpy as np
    spec = random_family_spec(3, 3, np.random.default_rng(3))
    game = build_game(spec)
    for s in enumerate_structures(3, 3):
        for labs in product("ab", repeat=3):
            prof = [Choice(s, l) for l in labs]
            assert game.induced.utility(prof) == spec.payoffs[(s, labs)]


def test_single_player():
    spec = spec_from_payoff_tensor([[[7]][0]])
    game = build_game(spec)
    assert len(game.choice_set(1)) == 1
    assert game.induced.utility((0,)) == (F(7),)


@pytest.mark.parametrize("n,k,n_labels", [(3, 2, 2), (3, 3, 2), (4, 2, 1), (3, 1, 3)])
def test_choice_set_sizes(n, k, n_labels):
    import numpy as np
    game = build_game(random_family_spec(n, k, np.random.default_rng(0), n_labels))
    expected = n_labels * len(enumerate_structures(n, k))
    assert all(len(game.choice_set(i)) == expected for i in range(1, n + 1))
    assert game.n_profiles == expected ** n


def test_choice_sets_nested():
    small, big = generate_pd(k=1), generate_pd(k=2)
    assert nested_specs(small, big)
    gs, gb = build_game(small), build_game(big)
    assert set(gs.choice_set(1)) <= set(gb.choice_set(1))


def test_missing_payoff():
    import numpy as np
    spec = random_family_spec(3, 2, np.random.default_rng(1))
    victim = CoalitionStructure.parse("1,2|3")
    for key in [k for k in spec.payoffs if k[0] == victim][:1]:
        del spec.payoffs[key]
    with pytest.raises(MissingPayoff):
        build_game(spec)


def test_payoffs_only_needed_on_image():
    spec = generate_pd()
    # drop the joint rows a unanimity mechanism can still reach: must fail
    broken = GameSpec(2, 2, dict(spec.strategy_labels),
                      {k: v for k, v in spec.payoffs.items() if k[0] == SEP}, "unanimity")
    with pytest.raises(MissingPayoff):
        build_game(broken)
    # with players unable to pick joint, joint payoffs are not needed
    labels = {(i, SEP): ("L", "H") for i in (1, 2)}
    ok = GameSpec(2, 2, labels, {k: v for k, v in spec.payoffs.items() if k[0] == SEP}, "unanimity")
    assert build_game(ok).n_profiles == 4


def test_duplicate_label():
    spec = generate_pd()
    spec.strategy_labels[(1, SEP)] = ("L", "L")
    with pytest.raises(DuplicateLabel):
        build_game(spec)


def test_structure_out_of_bounds():
    spec = generate_pd(k=1)
    spec.strategy_labels[(1, JOINT)] = ("L",)
    with pytest.raises(StructureOutOfBounds):
        build_game(spec)


def test_bad_bounds():
    spec = generate_pd()
    spec.k_max = 3
    with pytest.raises(InvalidBounds):
        build_game(spec)


def test_scale_guard():
    sep = CoalitionStructure.separated(range(1, 5))
    labels = {(i, sep): tuple(f"a{j}" for j in range(32)) for i in range(1, 5)}
    # the guard fires before payoff coverage is checked
    spec = GameSpec(4, 1, labels, {}, "identity")
    with pytest.raises(ScaleExceeded):
        build_game(spec)
