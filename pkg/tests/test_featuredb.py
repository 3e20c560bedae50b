import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comogphog.featuredb import (
    BadMagicError,
    CorruptEntryError,
    EmptyCorpusError,
    FeatureStore,
    UnsupportedVersionError,
    export_csv,
    ingest_dir,
    load_store,
    save_store,
)
from comogphog.features import FEATURE_LENGTH, FeatureVector
from comogphog.synthetic import ca_trace_to_pdb, extended_trace, helix_trace


def make_store(ids, seed=0):
    rng = np.random.default_rng(seed)
    return FeatureStore(
        entries=[FeatureVector(id=i, values=rng.random(FEATURE_LENGTH)) for i in ids]
    )


def same_store(a: FeatureStore, b: FeatureStore) -> bool:
    return (
        a.version == b.version
        and a.ids() == b.ids()
        and all(x.values.tobytes() == y.values.tobytes() for x, y in zip(a.entries, b.entries))
    )


def test_empty_store_round_trip(tmp_path):
    path = tmp_path / "empty.cmgp"
    save_store(FeatureStore(), path)
    assert same_store(load_store(path), FeatureStore())


def test_round_trip_bit_exact(tmp_path):
    store = make_store(["a", "b", "c"], seed=3)
    # throw in values that stress the float encoding
    store.entries[0].values[0] = 0.1 + 0.2
    store.entries[1].values[5] = 5e-324
    path = tmp_path / "s.cmgp"
    save_store(store, path)
    assert same_store(load_store(path), store)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.text(min_size=1, max_size=12), min_size=1, max_size=4, unique=True))
def test_round_trip_arbitrary_ids(tmp_path_factory, ids):
    store = make_store(ids, seed=len(ids))
    path = tmp_path_factory.mktemp("stores") / "s.cmgp"
    save_store(store, path)
    assert same_store(load_store(path), store)


def test_bad_magic(tmp_path):
    path = tmp_path / "bad.cmgp"
    path.write_bytes(b"NOPE" + b"\x00" * 32)
    with pytest.raises(BadMagicError):
        load_store(path)
    path.write_bytes(b"CM")
    with pytest.raises(BadMagicError):
        load_store(path)


def test_unsupported_version(tmp_path):
    store = make_store(["a"])
    path = tmp_path / "s.cmgp"
    save_store(store, path)
    blob = bytearray(path.read_bytes())
    blob[4] = 9  # bump the little-endian version field
    path.write_bytes(bytes(blob))
    with pytest.raises(UnsupportedVersionError):
        load_store(path)


def test_truncated_entry(tmp_path):
    store = make_store(["a", "b"])
    path = tmp_path / "s.cmgp"
    save_store(store, path)
    blob = path.read_bytes()
    path.write_bytes(blob[: len(blob) - 100])
    with pytest.raises(CorruptEntryError):
        load_store(path)


def test_trailing_bytes_rejected(tmp_path):
    store = make_store(["a"])
    path = tmp_path / "s.cmgp"
    save_store(store, path)
    path.write_bytes(path.read_bytes() + b"junk")
    with pytest.raises(CorruptEntryError):
        load_store(path)


def test_save_rejects_duplicate_ids(tmp_path):
    store = make_store(["a", "a"])
    with pytest.raises(ValueError):
        save_store(store, tmp_path / "s.cmgp")


def test_save_rejects_wrong_length(tmp_path):
    store = FeatureStore(entries=[FeatureVector(id="a", values=np.zeros(10))])
    with pytest.raises(ValueError):
        save_store(store, tmp_path / "s.cmgp")


def test_csv_export_round_trip_precision(tmp_path):
    store = make_store(["x", "y"], seed=11)
    path = tmp_path / "s.csv"
    export_csv(store, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    for line, entry in zip(lines, store.entries):
        fields = line.split(",")
        assert fields[0] == entry.id
        assert len(fields) == 1 + FEATURE_LENGTH
        parsed = np.array([float(v) for v in fields[1:]])
        assert np.array_equal(parsed, entry.values)


# --- ingestion ---


@pytest.fixture
def corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    (d / "helA.pdb").write_text(ca_trace_to_pdb(helix_trace(18, "helA")))
    (d / "strB.pdb").write_text(ca_trace_to_pdb(extended_trace(18, "strB")))
    return d


def test_ingest_two_files(corpus):
    store = ingest_dir(corpus)
    assert store.ids() == ["helA", "strB"]
    assert all(e.values.shape == (FEATURE_LENGTH,) for e in store.entries)


def test_ingest_skips_corrupt_files(corpus):
    (corpus / "broken.pdb").write_text("not a structure at all\n")
    events = []
    store = ingest_dir(corpus, report=lambda *a: events.append(a))
    assert store.ids() == ["helA", "strB"]
    skips = [e for e in events if e[1] == "skip"]
    assert len(skips) == 1 and skips[0][0] == "broken"


def test_ingest_skips_duplicate_stems(corpus):
    (corpus / "helA.ent").write_text(ca_trace_to_pdb(helix_trace(18, "helA")))
    events = []
    store = ingest_dir(corpus, report=lambda *a: events.append(a))
    assert store.ids() == ["helA", "strB"]
    assert any(e[1] == "skip" and e[2] == "duplicate id" for e in events)


def test_ingest_label_filter(corpus):
    from comogphog.structure_io import parse_scop_label

    labels = {"helA": parse_scop_label("helA", "a.1.1.1")}
    events = []
    store = ingest_dir(corpus, labels=labels, report=lambda *a: events.append(a))
    assert store.ids() == ["helA"]
    assert ("strB.pdb", "skip", "no label") in events


def test_ingest_empty_corpus(tmp_path):
    d = tmp_path / "nothing"
    d.mkdir()
    with pytest.raises(EmptyCorpusError):
        ingest_dir(d)
    (d / "junk.pdb").write_text("garbage")
    with pytest.raises(EmptyCorpusError):
        ingest_dir(d)


def test_ingest_rejects_non_directory(tmp_path):
    with pytest.raises(NotADirectoryError):
        ingest_dir(tmp_path / "missing")


def test_ingest_deterministic_across_runs_and_jobs(corpus, tmp_path):
    paths = [tmp_path / f"s{i}.cmgp" for i in range(3)]
    save_store(ingest_dir(corpus), paths[0])
    save_store(ingest_dir(corpus), paths[1])
    save_store(ingest_dir(corpus, jobs=2), paths[2])
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]
