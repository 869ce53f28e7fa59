import os
import unittest

from monty.tempfile import ScratchDir
from forge import FORGE_DATA
from forge.errors import ParseError
from forge.utils.parsers import data_path, read_records, parse_int, load_json


class ParsersTest(unittest.TestCase):
    def test_data_path(self):
        self.assertEqual(data_path("t.txt"), os.path.join(FORGE_DATA, "t.txt"))
        with self.assertRaises(ParseError) as context:
            data_path("no_such_file.txt")
        self.assertEqual(context.exception.path, "no_such_file.txt")

    def test_records(self):
        with ScratchDir("."):
            with open("elements.txt", "w") as f:
                f.write("# header\n\nradius 1  # trailing\naab 1\n")
            records = read_records("elements.txt")
        self.assertEqual(records, [(3, ["radius", "1"]), (4, ["aab", "1"])])

    def test_parse_int(self):
        self.assertEqual(parse_int("-3"), -3)
        with self.assertRaises(ParseError) as context:
            parse_int("x", "file.txt", 7)
        self.assertEqual(context.exception.line, 7)
        self.assertIn("file.txt:7", str(context.exception))

    def test_load_json(self):
        self.assertEqual(load_json("cycle8.json", required=("carrier",))["carrier"], 8)
        self.assertRaises(ParseError, load_json, "cycle8.json", required=("rules",))
        with ScratchDir("."):
            with open("list.json", "w") as f:
                f.write("[1, 2]")
            self.assertRaises(ParseError, load_json, "list.json")


if __name__ == '__main__':
    unittest.main()
