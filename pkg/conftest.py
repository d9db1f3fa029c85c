"""Pytest wiring: absltest.main() parses absl flags; do the same under pytest."""
from absl import flags


def pytest_configure(config):
    if not flags.FLAGS.is_parsed():
        flags.FLAGS.mark_as_parsed()
