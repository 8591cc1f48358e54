from graphlie import golden


def test_every_example_passes():
    results = golden.run_all()
    failed = [(r.name, r.detail) for r in results if not r.passed]
    assert not failed
    assert len(results) == len(golden.EXAMPLES)


def test_names_are_unique():
    names = [name for name, _ in golden.EXAMPLES]
    assert len(set(names)) == len(names)


def test_crash_becomes_failure(monkeypatch):
    def boom():
        raise RuntimeError("bad")

    monkeypatch.setattr(golden, "EXAMPLES", [("boom", boom)])
    (r,) = golden.run_all()
    assert not r.passed and "bad" in r.detail
