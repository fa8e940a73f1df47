import unittest
import sys
import os
import tomllib

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

PYPROJECT = os.path.join(os.path.dirname(__file__), '..', '..', 'pyproject.toml')


def _names(requirements):
    return {req.split('>')[0].split('=')[0].split('<')[0].strip() for req in requirements}


class TestPackaging(unittest.TestCase):
    """Test the project manifest."""

    def setUp(self):
        with open(PYPROJECT, 'rb') as handle:
            self.project = tomllib.load(handle)['project']

    def test_runtime_dependencies(self):
        self.assertEqual(_names(self.project['dependencies']), {'numpy', 'scipy', 'dlt', 'duckdb'})

    def test_linter_is_a_dev_extra(self):
        self.assertIn('ruff', _names(self.project['optional-dependencies']['dev']))

    def test_console_script(self):
        self.assertEqual(self.project['scripts']['su3-atom'], 'su3_atom.cli:main')


if __name__ == '__main__':
    unittest.main()
