"""Re-fetch the vendored ISCAS'85 bench files and rebuild MANIFEST.json.

The files under iscas85/ are the standard .bench translations of the 1985
netlist distribution, taken from the hdl-benchmarks collection at the commit
pinned below. Run this script only to refresh the vendored copy; the package
never downloads anything at runtime.

    python -m spa.data.fetch_iscas85 [--dest DIR]

Network access to github.com is required.
"""

import argparse
import hashlib
import io
import json
import pathlib
import tarfile
import urllib.request

REPO = "https://github.com/ispras/hdl-benchmarks"
COMMIT = "10c3fb51d0810ce862659211862660dcc270a6af"
ARCHIVE = f"{REPO}/archive/{COMMIT}.tar.gz"
SUBDIR = "iscas85/bench"
CIRCUITS = ["c17", "c432", "c499", "c880", "c1355", "c1908",
            "c2670", "c3540", "c5315", "c6288", "c7552"]


def fetch(dest: pathlib.Path) -> dict:
    print(f"fetching {ARCHIVE}")
    with urllib.request.urlopen(ARCHIVE) as resp:
        blob = resp.read()
    shas = {}
    wanted = {f"{name}.bench" for name in CIRCUITS}
    out = dest / "iscas85"
    out.mkdir(parents=True, exist_ok=True)
    with tarfile.open(fileobj=io.BytesIO(blob), mode="r:gz") as tar:
        for member in tar.getmembers():
            parts = member.name.split("/", 1)
            if len(parts) != 2 or not parts[1].startswith(SUBDIR + "/"):
                continue
            fname = parts[1].rsplit("/", 1)[1]
            if fname not in wanted:
                continue
            data = tar.extractfile(member).read()
            (out / fname).write_bytes(data)
            shas[fname] = hashlib.sha256(data).hexdigest()
    missing = wanted - set(shas)
    if missing:
        raise RuntimeError(f"archive did not contain: {sorted(missing)}")
    return shas


def write_manifest(dest: pathlib.Path, shas: dict) -> None:
    manifest = {
        "suite": "ISCAS'85 combinational benchmark circuits",
        "format": "bench",
        "source": {"repository": REPO, "commit": COMMIT, "path": SUBDIR},
        "note": "Standard .bench translations of the 1985 netlist "
                "distribution. Translations deduplicate the few repeated "
                "gate fan-ins present in the original .isc files (known to "
                "affect c1908, c2670, c3540).",
        "sha256": dict(sorted(shas.items())),
    }
    with open(dest / "MANIFEST.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default=str(pathlib.Path(__file__).parent),
                    help="directory receiving iscas85/ and MANIFEST.json")
    args = ap.parse_args(argv)
    dest = pathlib.Path(args.dest)
    shas = fetch(dest)
    write_manifest(dest, shas)
    print(f"wrote {len(shas)} files under {dest / 'iscas85'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
