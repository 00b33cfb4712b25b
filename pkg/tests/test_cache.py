import os

from fusetree.cache import Cache
from fusetree.cache import getCache

class TestCache:
    def test_environment_moves_directory(self, tmp_path):
        assert getCache().directory == os.path.join(str(tmp_path), "cache")

    def test_miss(self):
        assert getCache().get(key = "absent") is None

    def test_set_and_get(self):
        cache = getCache(namespace = "censoring")

        assert cache.set(key = "A", value = 1.25)
        assert cache.get(key = "A") == 1.25

    def test_namespaces_are_separate(self):
        getCache(namespace = "first").set(key = "x", value = 1)

        assert getCache(namespace = "second").get(key = "x") is None
        assert getCache(namespace = "first").keys() == ["first.x"]

    def test_clear(self):
        cache = getCache(namespace = "censoring")
        cache.set(key = "A", value = 1.0)
        cache.set(key = "B", value = 2.0)

        getCache(namespace = "other").set(key = "C", value = 3.0)

        assert cache.clear() == 2
        assert cache.keys() == []
        assert getCache(namespace = "other").get(key = "C") == 3.0

    def test_unusable_directory_misses(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")

        cache = Cache(namespace = "root", directory = str(blocker / "cache"))

        assert not cache.set(key = "x", value = 1)
        assert cache.get(key = "x") is None
        assert cache.keys() == []
