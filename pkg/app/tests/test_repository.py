"""Tests for repository pattern implementation."""

import json
import math

import pytest

from app.repository.base import Repository, dump_document
from app.repository.file_repository import FileRepository
from app.repository.memory_repository import MemoryRepository


class TestRepository:
    """Tests for base Repository class."""

    def test_repository_abstract_methods(self):
        """Repository cannot be instantiated and declares the storage operations."""
        with pytest.raises(TypeError, match="Can't instantiate abstract class"):
            Repository()  # pylint: disable=abstract-class-instantiated

        for name in ("save", "load", "exists", "delete", "list_keys"):
            assert hasattr(Repository, name)


class TestDumpDocument:
    """Tests for dump_document."""

    def test_canonical_text(self):
        """Keys are sorted, indented by two spaces and followed by a newline."""
        assert dump_document({"b": 1, "a": [0.1]}) == '{\n  "a": [\n    0.1\n  ],\n  "b": 1\n}\n'

    def test_floats_round_trip(self):
        """Floats are written with enough digits to be read back exactly."""
        values = [1 / 3, 2.0**-40, 123456.789e-7]
        assert json.loads(dump_document(values)) == values

    def test_rejects_nan(self):
        """NaN is not valid JSON."""
        with pytest.raises(ValueError):
            dump_document({"x": math.nan})


@pytest.fixture(params=["memory", "file"])
def repo(request, tmp_path):
    """Both repository implementations behind the same interface."""
    if request.param == "memory":
        return MemoryRepository()
    return FileRepository(tmp_path / "models")


class TestRepositoryBehaviour:
    """Contract shared by MemoryRepository and FileRepository."""

    def test_save_and_load(self, repo):
        """A saved document loads back equal."""
        data = {"engine_id": 3, "centers": [[0.1, 0.2]], "counts": [2]}
        repo.save("model_3", data)
        assert repo.load("model_3") == data

    def test_load_missing(self, repo):
        """Absent keys load as None."""
        assert repo.load("missing") is None

    def test_overwrite(self, repo):
        """Saving again replaces the value."""
        repo.save("fleet", {"version": 1})
        repo.save("fleet", {"version": 2})
        assert repo.load("fleet") == {"version": 2}

    def test_exists_and_delete(self, repo):
        """Deleting a key makes it absent; deleting twice is harmless."""
        repo.save("model_1", {})
        assert repo.exists("model_1")
        repo.delete("model_1")
        repo.delete("model_1")
        assert not repo.exists("model_1")

    def test_list_keys_with_prefix(self, repo):
        """Keys are listed sorted and filtered by prefix."""
        for key in ("model_2", "fleet", "model_10", "model_1"):
            repo.save(key, {})
        assert repo.list_keys("model_") == ["model_1", "model_10", "model_2"]
        assert repo.list_keys() == ["fleet", "model_1", "model_10", "model_2"]

    def test_text_format(self, repo):
        """Text documents are stored verbatim."""
        repo.save("notes", "plain text\n", output_format="text")
        assert repo.load("notes") == "plain text\n"

    def test_unsupported_format(self, repo):
        """Only json and text are supported."""
        with pytest.raises(ValueError):
            repo.save("x", {}, output_format="xml")


class TestFileRepository:
    """Tests specific to FileRepository."""

    def test_creates_directory(self, tmp_path):
        """The base directory is created on construction."""
        base = tmp_path / "a" / "b"
        FileRepository(base)
        assert base.is_dir()

    def test_file_layout(self, tmp_path):
        """Each key is one canonical JSON file."""
        repo = FileRepository(tmp_path)
        repo.save("model_4", {"k": 5})
        path = repo.path_for("model_4")
        assert path == tmp_path / "model_4.json"
        assert path.read_text(encoding="utf-8") == '{\n  "k": 5\n}\n'

    def test_corrupted_json(self, tmp_path):
        """A corrupted file surfaces as a JSON error."""
        (tmp_path / "model_1.json").write_text("{not json", encoding="utf-8")
        with pytest.raises(json.JSONDecodeError):
            FileRepository(tmp_path).load("model_1")
