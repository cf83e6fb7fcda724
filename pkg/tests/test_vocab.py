import pytest

from promptbo.vocab import Vocabulary, VocabularyError, load_vocabulary, render_prompt


def test_load_file_order(vocab_file):
    v = load_vocabulary(vocab_file)
    assert v.size == 3
    assert v.entries[1] == "beta"


def test_load_without_trailing_newline(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("a\nb", encoding="utf-8")
    assert load_vocabulary(p).entries == ("a", "b")


def test_load_large_preset_sized_file(tmp_path):
    # SST-2 preset cardinality
    p = tmp_path / "v.txt"
    p.write_text("\n".join(f"w{i}" for i in range(3747)) + "\n", encoding="utf-8")
    assert load_vocabulary(p).size == 3747


def test_missing_file(tmp_path):
    with pytest.raises(VocabularyError, match="not found"):
        load_vocabulary(tmp_path / "nope.txt")


def test_empty_file(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("", encoding="utf-8")
    with pytest.raises(VocabularyError, match="empty"):
        load_vocabulary(p)


def test_empty_line_reports_number(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("a\n\nc\n", encoding="utf-8")
    with pytest.raises(VocabularyError, match="line 2"):
        load_vocabulary(p)


def test_non_utf8(tmp_path):
    p = tmp_path / "v.txt"
    p.write_bytes(b"a\n\xff\xfe\n")
    with pytest.raises(VocabularyError, match="UTF-8"):
        load_vocabulary(p)


def test_render_basic(vocab_file):
    v = load_vocabulary(vocab_file)
    assert render_prompt(v, [0, 2]) == "alpha gamma"
    assert render_prompt(v, []) == ""
    assert render_prompt(v, [1, 1, 1]) == "beta beta beta"


def test_render_out_of_range(vocab_file):
    v = load_vocabulary(vocab_file)
    with pytest.raises(VocabularyError, match="index 3 at position 1"):
        render_prompt(v, [0, 3])


def test_load_then_render_all_reproduces_file(vocab_file):
    v = load_vocabulary(vocab_file)
    assert render_prompt(v, range(v.size)) == "alpha beta gamma"


def test_render_injective_for_distinct_entries(vocab_file):
    v = load_vocabulary(vocab_file)
    import itertools

    rendered = [render_prompt(v, seq) for seq in itertools.product(range(3), repeat=2)]
    assert len(set(rendered)) == len(rendered)


def test_vocabulary_rejects_singleton():
    with pytest.raises(VocabularyError):
        Vocabulary(entries=("only",))
