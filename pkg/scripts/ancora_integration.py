"""Compare thematic-role counts in public UD AnCora releases with published totals.

Downloads the Spanish and Catalan AnCora treebanks from the Universal
Dependencies GitHub repositories, counts ``ArgTem`` roles over all splits,
and prints a report-mode diff per language.  The diff is informational:
current UD releases differ from the corpus snapshot the published counts
were taken from, so no tolerance is asserted.

    python scripts/ancora_integration.py [--branch master] [--cache DIR]
"""

import argparse
import io
import sys
import urllib.request
from collections import Counter
from pathlib import Path

from relabel.conllu import iter_sentences
from relabel.stats import FreqTable, compare_with_golden, count_labels, published_counts, render_diff

REPOS = {
    "ancora_spanish": ("UD_Spanish-AnCora", "es_ancora"),
    "ancora_catalan": ("UD_Catalan-AnCora", "ca_ancora"),
}
URL = "https://raw.githubusercontent.com/UniversalDependencies/{repo}/{branch}/{prefix}-ud-{split}.conllu"


def fetch(url: str, cache: Path | None) -> io.TextIOBase:
    if cache is not None:
        local = cache / url.rsplit("/", 1)[1]
        if not local.exists():
            local.parent.mkdir(parents=True, exist_ok=True)
            with urllib.request.urlopen(url, timeout=60) as resp:
                local.write_bytes(resp.read())
        return open(local, encoding="utf-8-sig", newline="\n")
    resp = urllib.request.urlopen(url, timeout=60)
    return io.TextIOWrapper(resp, encoding="utf-8-sig", newline="\n")


def role_counts(name: str, branch: str, cache: Path | None) -> FreqTable:
    repo, prefix = REPOS[name]
    raw = Counter()
    for split in ("train", "dev", "test"):
        with fetch(URL.format(repo=repo, branch=branch, prefix=prefix, split=split), cache) as fh:
            raw.update(count_labels(iter_sentences(fh), "ArgTem").counts)
    roles = Counter()
    for value, n in raw.items():
        roles[value.partition(":")[2] or "_"] += n
    return FreqTable(dict(roles), "role", name)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--branch", default="master")
    parser.add_argument("--cache", type=Path, help="keep downloaded files here")
    args = parser.parse_args(argv)
    for name in REPOS:
        table = role_counts(name, args.branch, args.cache)
        diff = compare_with_golden(table, published_counts(name, "role"), mode="report")
        print(f"# {name}: {table.total} role annotations, {len(diff)} labels differ")
        sys.stdout.write(render_diff(diff))
    return 0


if __name__ == "__main__":
    sys.exit(main())
