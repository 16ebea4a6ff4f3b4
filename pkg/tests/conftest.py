import pytest

from ietwfa import GrammarRule, Ietwgfa, LinearGrammar, Nfa, Rule, Transition


def make_ab():
    return Ietwgfa({"s", "q"}, {"a", "b"}, [Rule.left("a", "s", "q"), Rule.right("q", "b", "s")], "s", {"s"})


def make_abc():
    rules = [Rule.left("a", "s", "q"), Rule.right("q", "b", "s"), Rule.epsilon("s", "v"),
             Rule.right("v", "c", "w"), Rule.epsilon("w", "v")]
    return Ietwgfa({"s", "q", "v", "w"}, {"a", "b", "c"}, rules, "s", {"s", "v"})


def make_a():
    return Ietwgfa({"s", "f"}, {"a"}, [Rule.right("s", "a", "f")], "s", {"f"})


def make_g_ab():
    return LinearGrammar({"S"}, {"a", "b"}, [GrammarRule.linear("S", "a", "S", "b"), GrammarRule.terminal("S")], "S")


def star(symbol, alphabet=("a", "b")):
    """NFA for symbol*."""
    return Nfa({"p"}, alphabet, [Transition("p", symbol, "p")], "p", {"p"})


def plus(symbol, alphabet=("a", "b")):
    return Nfa({"p", "r"}, alphabet, [Transition("p", symbol, "r"), Transition("r", symbol, "r")], "p", {"r"})


def words_nfa(words, alphabet=("a", "b")):
    """Trie-shaped ε-free NFA for a finite set of words."""
    states, rules, finals = {"<>"}, [], set()
    for w in words:
        cur = "<>"
        for i, sym in enumerate(w):
            nxt = "<" + w[: i + 1] + ">"
            states.add(nxt)
            rules.append(Transition(cur, sym, nxt))
            cur = nxt
        finals.add(cur)
    return Nfa(states, alphabet, rules, "<>", finals)


def lang(*words):
    return {tuple(w) for w in words}


@pytest.fixture
def m_ab():
    return make_ab()


@pytest.fixture
def m_abc():
    return make_abc()


@pytest.fixture
def m_a():
    return make_a()


@pytest.fixture
def g_ab():
    return make_g_ab()


CRITERIA = {}


def report(number, passed, detail):
    """Record one acceptance criterion outcome for the terminal summary."""
    CRITERIA[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    print(CRITERIA[number])


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[number])
