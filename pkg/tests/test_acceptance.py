"""End-to-end acceptance criteria 1 to 9, one test each.

Every criterion prints a PASS/FAIL line; the lines are repeated in the
pytest terminal summary.
"""
import io
import time
from functools import lru_cache

from ietwfa import Ietwgfa, Mode, Nfa, Rule, classify, elg_to_gfa_init_even, enumerate_language, equiv_up_to, \
    even_to_efree_sfa, gfa_to_lg, gfa_to_sfa, init_even_to_elg, init_even_to_sfa, is_even_linear, lg_enumerate, \
    lg_to_gfa, nfa_enumerate, parse_spec, remove_epsilon, restrict_finite_prefix, restrict_middle, \
    restrict_sides, restrict_whole, serialize, validate_automaton
from ietwfa.cli import main
from ietwfa.oracle import GenConfig, finite_prefix_oracle, middle_oracle, oracle_language, \
    random_finite_language, random_gfa, random_lg, random_nfa, sides_oracle, whole_oracle

from conftest import lang, make_a, make_ab, make_abc, make_g_ab, report

GEN, ALT, EVEN, INIT = Mode.GENERAL, Mode.ALTERNATING, Mode.EVEN, Mode.INIT_EVEN
CFG = GenConfig(max_states=4, max_rules=6, max_segment_len=2, alphabet_size=3)
# denser machines: with the default sizes most even and init-even languages are empty
DENSE = GenConfig(max_states=3, max_rules=8, max_segment_len=2, alphabet_size=2)


def machines(count, cfg=CFG):
    return [random_gfa(cfg.with_seed(seed)) for seed in range(count)]


def nonempty(words):
    return bool(set(words) - {()})


def first_failure(checks):
    """Index and label of the first failing check, or None."""
    for label, ok in checks:
        if not ok:
            return label
    return None


# -- construction outputs, shared with the round-trip criterion ---------------------------


@lru_cache(maxsize=None)
def normal_forms():
    return [(m, remove_epsilon(gfa_to_sfa(m))) for m in machines(50)]


@lru_cache(maxsize=None)
def grammar_pairs():
    lgs = [random_lg(CFG.with_seed(seed)) for seed in range(50)]
    return [(g, lg_to_gfa(g)) for g in lgs], [(m, gfa_to_lg(m)) for m in machines(50)]


@lru_cache(maxsize=None)
def even_outputs():
    return [(m, even_to_efree_sfa(m)) for m in machines(30, DENSE)]


@lru_cache(maxsize=None)
def init_even_outputs():
    ms = machines(30, DENSE)
    grammars = [random_lg(DENSE.with_seed(seed), even=True) for seed in range(30)]
    return ([(m, init_even_to_elg(m)) for m in ms], [(g, elg_to_gfa_init_even(g)) for g in grammars],
            [(m, init_even_to_sfa(m)) for m in ms])


def simple_epsilon_free(seed):
    m = random_gfa(GenConfig(max_states=3, max_rules=8, max_segment_len=1, alphabet_size=2, seed=seed))
    return Ietwgfa(m.states, m.alphabet, [r for r in m.rules if not r.is_epsilon], m.start, m.finals)


def restrictor(seed, alphabet, acyclic=False):
    return random_nfa(GenConfig(max_states=2, max_rules=6, seed=seed), alphabet=alphabet, acyclic=acyclic)


@lru_cache(maxsize=None)
def restriction_cases():
    cases = []
    for seed in range(30):
        m = simple_epsilon_free(seed)
        a, b = restrictor(seed + 1000, m.alphabet), restrictor(seed + 2000, m.alphabet)
        outer_a = restrictor(seed + 3000, m.alphabet, acyclic=True)
        outer_c = restrictor(seed + 4000, m.alphabet, acyclic=True)
        words = random_finite_language(GenConfig(max_segment_len=3, seed=seed), m.alphabet, max_words=4)
        cases.append({
            "m": m, "a": a, "b": b, "words": words, "outer_a": outer_a, "outer_c": outer_c,
            "sides": restrict_sides(m, a, b),
            "whole": restrict_whole(m, a),
            "finite-prefix": restrict_finite_prefix(m, words, b),
            "middle": restrict_middle(m, outer_a, b, outer_c),
        })
    return cases


# -- criteria ------------------------------------------------------------------------------


def test_criterion_1_differential_semantics():
    started = time.perf_counter()
    mismatches = [(seed, mode.value) for seed, m in enumerate(machines(100)) for mode in Mode
                  if enumerate_language(m, mode, 5) != oracle_language(m, mode, 5)]
    elapsed = time.perf_counter() - started
    ok = not mismatches and elapsed < 60
    report(1, ok, f"100 machines x 4 modes at length 5, {len(mismatches)} mismatches, {elapsed:.1f}s")
    assert not mismatches, mismatches[:5]
    assert elapsed < 60


def test_criterion_2_linear_characterization():
    started = time.perf_counter()
    from_grammars, from_machines = grammar_pairs()
    failures = [i for i, (g, m) in enumerate(from_grammars) if not equiv_up_to(g, m, 6).equal]
    failures += [50 + i for i, (m, g) in enumerate(from_machines) if not equiv_up_to(m, g, 6).equal]
    elapsed = time.perf_counter() - started
    covered = sum(nonempty(lg_enumerate(g, 6)) for g, _ in from_grammars)
    covered += sum(nonempty(enumerate_language(m, GEN, 6)) for m, _ in from_machines)
    ok = not failures and elapsed < 120
    report(2, ok, f"50 grammars and 50 automata round-tripped at length 6 ({covered} non-trivial), "
                  f"{len(failures)} failures, {elapsed:.2f}s")
    assert not failures
    assert elapsed < 120


def test_criterion_3_normalization():
    bad = []
    for i, (m, out) in enumerate(normal_forms()):
        c = classify(out)
        if not (c.simple and c.epsilon_free and equiv_up_to(m, out, 6).equal):
            bad.append(i)
    report(3, not bad, f"50 machines made simple and epsilon-free, {len(bad)} failures")
    assert not bad


def test_criterion_4_even_construction():
    bad, nontrivial = [], 0
    for i, (m, out) in enumerate(even_outputs()):
        c = classify(out)
        general = enumerate_language(out, GEN, 6)
        nontrivial += nonempty(general)
        if not (c.simple and c.epsilon_free and general == enumerate_language(out, EVEN, 6)
                and general == oracle_language(m, EVEN, 6)):
            bad.append(i)
    report(4, not bad, f"30 machines, {nontrivial} with non-empty words, {len(bad)} failures")
    assert not bad


def test_criterion_5_even_lengths():
    violations = [(i, w) for i, (_, out) in enumerate(even_outputs())
                  for w in enumerate_language(out, GEN, 7) if len(w) % 2]
    report(5, not violations, f"even-construction outputs at length 7, {len(violations)} odd words")
    assert not violations


def _init_even_structure(out):
    return (all(r.target != out.start for r in out.rules)
            and all(r.state == out.start for r in out.rules if r.is_epsilon))


def test_criterion_6_init_even_pipeline():
    to_grammar, from_grammar, to_simple = init_even_outputs()
    bad = [("grammar", i) for i, (m, g) in enumerate(to_grammar)
           if not (is_even_linear(g).even and lg_enumerate(g, 6) == oracle_language(m, INIT, 6))]
    bad += [("automaton", i) for i, (g, m) in enumerate(from_grammar)
            if enumerate_language(m, INIT, 6) != lg_enumerate(g, 6)]
    bad += [("structure", i) for i, (_, out) in enumerate(to_simple) if not _init_even_structure(out)]
    covered = sum(nonempty(lg_enumerate(g, 6)) for _, g in to_grammar)
    covered_g = sum(nonempty(lg_enumerate(g, 6)) for g, _ in from_grammar)
    report(6, not bad, f"30 machines ({covered} non-trivial), 30 even grammars ({covered_g} non-trivial), "
                       f"30 simple outputs, {len(bad)} failures")
    assert not bad


def test_criterion_7_witness_languages():
    m_ab, m_abc, m_a = make_ab(), make_abc(), make_a()
    anbn = lang("", "ab", "aabb", "aaabbb")
    anbncm = {tuple("a" * n + "b" * n + "c" * k) for n in range(4) for k in range(7) if 2 * n + k <= 6}
    m_aa = Ietwgfa({"s", "q", "f"}, {"a"}, [Rule.left("a", "s", "q"), Rule.right("q", "a", "f")], "s", {"f"})
    checks = [
        ("M_ab general", enumerate_language(m_ab, GEN, 6) == anbn == oracle_language(m_ab, GEN, 6)),
        ("M_ab alternating", enumerate_language(m_ab, ALT, 6) == anbn == oracle_language(m_ab, ALT, 6)),
        ("M_ab even", enumerate_language(m_ab, EVEN, 6) == anbn == oracle_language(m_ab, EVEN, 6)),
        ("M_abc alternating", enumerate_language(m_abc, ALT, 6) == anbncm == oracle_language(m_abc, ALT, 6)),
        ("M_a init-even", enumerate_language(m_a, INIT, 4) == lang("a") == oracle_language(m_a, INIT, 4)),
        ("aa even", enumerate_language(m_aa, EVEN, 4) == lang("aa") == oracle_language(m_aa, EVEN, 4)),
    ]
    failed = first_failure(checks)
    report(7, failed is None, "witness languages reproduced" if failed is None else f"{failed} differs")
    assert failed is None


def test_criterion_8_restrictions():
    bad, covered = [], dict.fromkeys(("sides", "whole", "finite-prefix", "middle"), 0)
    for i, case in enumerate(restriction_cases()):
        m, a, b = case["m"], case["a"], case["b"]
        outer_a, outer_c = case["outer_a"], case["outer_c"]
        got = {"sides": enumerate_language(case["sides"], GEN, 6),
               "whole": enumerate_language(case["whole"], GEN, 6),
               "finite-prefix": nfa_enumerate(case["finite-prefix"], 6),
               "middle": nfa_enumerate(case["middle"], 6)}
        for op, words in got.items():
            covered[op] += nonempty(words)
        if got["sides"] != sides_oracle(m, a, b, 6):
            bad.append(("sides", i))
        if got["whole"] != whole_oracle(m, a, 6):
            bad.append(("whole", i))
        prefix_nfa, middle_nfa = case["finite-prefix"], case["middle"]
        if validate_automaton(prefix_nfa) or validate_automaton(middle_nfa):
            bad.append(("validation", i))
        if got["finite-prefix"] != finite_prefix_oracle(m, case["words"], b, 6):
            bad.append(("finite-prefix", i))
        outer = max(len(outer_a.states), len(outer_c.states))
        if got["middle"] != middle_oracle(m, outer_a, b, outer_c, 6, outer):
            bad.append(("middle", i))
    shown = ", ".join(f"{op} {n}" for op, n in covered.items())
    report(8, not bad, f"4 operations x 30 combinations at length 6 (non-trivial: {shown}), {len(bad)} failures")
    assert not bad


def _cli(argv):
    out = io.StringIO()
    return main(argv, out), out.getvalue()


def test_criterion_9_cli_contract(tmp_path):
    m_path, g_path = tmp_path / "m_ab.txt", tmp_path / "g_ab.txt"
    m_path.write_text(serialize(make_ab()))
    g_path.write_text(serialize(make_g_ab()))
    examples = [
        (["accept", str(m_path), "aabb"], 0, None),
        (["equiv", str(m_path), str(g_path), "--max-len", "6"], 0, "equal up to 6\n"),
        (["enumerate", str(m_path), "--max-len", "4", "--mode", "even", "--json"], 0, '{"words":["","ab","aabb"]}\n'),
    ]
    checks = []
    for argv, code, text in examples:
        got_code, got_text = _cli(argv)
        checks.append((" ".join(argv[:1]), got_code == code and (text is None or got_text == text)))

    from_grammars, from_machines = grammar_pairs()
    to_grammar, from_grammar, to_simple = init_even_outputs()
    docs = [out for _, out in normal_forms()]
    docs += [out for _, out in from_grammars + from_machines + to_grammar + from_grammar + to_simple]
    docs += [out for _, out in even_outputs()]
    for case in restriction_cases():
        docs += [case[k] for k in ("sides", "whole", "finite-prefix", "middle")]
    broken = [i for i, doc in enumerate(docs)
              if parse_spec(serialize(doc)) != doc or serialize(parse_spec(serialize(doc))) != serialize(doc)]
    checks.append(("round trip", not broken))
    failed = first_failure(checks)
    report(9, failed is None, f"3 CLI examples, {len(docs)} construction outputs round-tripped, "
                              f"{len(broken)} round-trip failures")
    assert failed is None
