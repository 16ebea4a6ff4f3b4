import io
import json
import subprocess
import sys

import pytest

from ietwfa import Mode, enumerate_language, lg_enumerate, nfa_enumerate, parse_spec, serialize
from ietwfa.cli import main, show_word

from conftest import lang, make_a, make_ab, make_abc, make_g_ab, plus, star, words_nfa


@pytest.fixture
def files(tmp_path):
    docs = {"m_ab": make_ab(), "m_abc": make_abc(), "m_a": make_a(), "g_ab": make_g_ab(),
            "a_star": star("a"), "b_star": star("b"), "b_plus": plus("b"), "ab_words": words_nfa(["ab", "aabb"])}
    paths = {}
    for name, doc in docs.items():
        path = tmp_path / f"{name}.txt"
        path.write_text(serialize(doc))
        paths[name] = str(path)
    prefixes = tmp_path / "prefixes.txt"
    prefixes.write_text("type: finite\nalphabet: a b\nword: a\nword: a a\n")
    paths["prefixes"] = str(prefixes)
    return paths


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


class TestContract:
    def test_accept(self, files):
        assert run("accept", files["m_ab"], "aabb") == (0, "accepted\n")
        assert run("accept", files["m_ab"], "aab") == (1, "rejected\n")

    def test_equiv(self, files):
        assert run("equiv", files["m_ab"], files["g_ab"], "--max-len", 6) == (0, "equal up to 6\n")

    def test_enumerate_json(self, files):
        code, text = run("enumerate", files["m_ab"], "--max-len", 4, "--mode", "even", "--json")
        assert code == 0 and text == '{"words":["","ab","aabb"]}\n'

    def test_installed_entry_point(self, files):
        proc = subprocess.run([sys.executable, "-m", "ietwfa", "enumerate", files["m_ab"], "--max-len", "4",
                               "--mode", "even", "--json"], capture_output=True, check=False)
        assert proc.returncode == 0
        assert proc.stdout == b'{"words":["","ab","aabb"]}\n'


class TestCommands:
    def test_validate(self, files, tmp_path):
        assert run("validate", files["m_ab"]) == (0, "valid\n")
        bad = tmp_path / "bad.txt"
        bad.write_text("type: lg\nnonterminals: S a\nterminals: a\nstart: S\n")
        code, text = run("validate", bad)
        assert code == 1 and "disjointness" in text

    def test_modes_and_tokens(self, files):
        assert run("accept", files["m_a"], "a", "--mode", "init-even")[0] == 0
        assert run("accept", files["m_a"], "a", "--mode", "even")[0] == 1
        assert run("accept", files["m_abc"], "a b c", "--tokens", "--mode", "alt")[0] == 0
        assert run("accept", files["m_ab"], "_")[0] == 0

    def test_accept_other_documents(self, files):
        assert run("accept", files["g_ab"], "ab")[0] == 0
        assert run("accept", files["b_plus"], "_")[0] == 1
        assert run("accept", files["prefixes"], "aa")[0] == 0

    def test_trace(self, files):
        code, text = run("trace", files["m_ab"], "ab")
        assert code == 0 and "a s -> q" in text and "q b -> s" in text
        assert run("trace", files["m_ab"], "ba") == (1, "rejected\n")

    def test_enumerate_plain(self, files):
        assert run("enumerate", files["g_ab"], "--max-len", 4) == (0, "_\nab\naabb\n")

    def test_convert(self, files):
        code, text = run("convert", files["m_ab"], "--to", "lg")
        assert code == 0 and lg_enumerate(parse_spec(text), 4) == lang("", "ab", "aabb")
        code, text = run("convert", files["m_ab"], "--to", "even-sfa")
        assert enumerate_language(parse_spec(text), Mode.GENERAL, 4) == lang("", "ab", "aabb")
        code, text = run("convert", files["g_ab"], "--to", "gfa", "--mode-context", "init-even")
        assert enumerate_language(parse_spec(text), Mode.INIT_EVEN, 4) == lang("", "ab", "aabb")
        code, text = run("convert", files["m_a"], "--to", "init-even-sfa")
        assert enumerate_language(parse_spec(text), Mode.INIT_EVEN, 3) == lang("a")

    def test_convert_rejects_wrong_kind(self, files):
        assert run("convert", files["g_ab"], "--to", "sfa")[0] == 2

    def test_restrict(self, files):
        code, text = run("restrict", files["m_ab"], "--op", "whole", "--with", files["ab_words"])
        assert code == 0 and enumerate_language(parse_spec(text), Mode.GENERAL, 6) == lang("ab", "aabb")
        code, text = run("restrict", files["m_ab"], "--op", "finite-prefix", "--with", files["prefixes"],
                         files["b_plus"])
        assert code == 0 and nfa_enumerate(parse_spec(text), 4) == lang("ab", "aabb")
        code, text = run("restrict", files["m_ab"], "--op", "sides", "--with", files["a_star"], files["b_star"])
        assert code == 0
        code, text = run("restrict", files["m_ab"], "--op", "middle", "--with", files["a_star"], files["b_star"],
                         files["b_star"])
        assert code == 0 and nfa_enumerate(parse_spec(text), 2) == lang("", "b", "bb")

    def test_restrict_errors(self, files):
        assert run("restrict", files["m_ab"], "--op", "whole", "--with", files["a_star"], files["b_star"])[0] == 2
        assert run("restrict", files["m_abc"], "--op", "whole", "--with", files["a_star"])[0] == 2
        assert run("restrict", files["m_ab"], "--op", "whole", "--with", files["g_ab"])[0] == 2

    def test_equiv_differences(self, files):
        code, text = run("equiv", files["m_ab"], files["ab_words"], "--max-len", 4)
        assert code == 1 and text == f"differ: _ is only in {files['m_ab']}\n"
        code, text = run("equiv", files["m_ab"], files["ab_words"], "--max-len", 4, "--json")
        assert code == 1 and json.loads(text) == {"equal": False, "counterexample": ""}
        code, _ = run("equiv", files["m_a"], files["m_a"], "--max-len", 3, "--modes", "general", "init-even")
        assert code == 0

    def test_fuzz(self):
        code, text = run("fuzz", "--config", "max_states=3", "seed=5", "--rounds", 3, "--max-len", 3)
        assert code == 0 and text.endswith("3 rounds, 0 mismatches\n")
        assert run("fuzz", "--config", "colour=3", "--rounds", 1)[0] == 2


class TestUsageErrors:
    def test_missing_file(self, tmp_path):
        assert run("accept", tmp_path / "nope.txt", "a")[0] == 2

    def test_parse_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("type: ietwgfa\nstates: s\n")
        assert run("validate", bad)[0] == 2
        assert "bad.txt" in capsys.readouterr().err

    def test_foreign_symbol(self, files):
        assert run("accept", files["m_ab"], "abc")[0] == 2

    def test_bad_arguments(self, files):
        assert run("enumerate", files["m_ab"])[0] == 2
        assert run("enumerate", files["m_ab"], "--max-len", -1)[0] == 2
        assert run("bogus")[0] == 2


def test_show_word():
    assert show_word(("a", "b")) == "ab"
    assert show_word(("ab", "c"), {"ab", "c"}) == "ab c"
