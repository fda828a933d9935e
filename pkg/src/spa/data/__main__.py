"""Print the path of the vendored benchmark corpus.

Handy for pointing the CLI at the shipped circuits:

    spa analyze "$(python -m spa.data)" --out results
"""

from . import corpus_dir

if __name__ == "__main__":
    print(corpus_dir())
