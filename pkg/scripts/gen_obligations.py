"""Regenerate lib/obligations.json from the checked library.

Run after editing a library file, then review the diff: the manifest is the
golden record, so any change in it is a change in what the library proves.
"""

import json
import sys

from splitproof.library import MANIFEST, build_manifest, load_library, run_deep


def main() -> int:
    manifest = run_deep(lambda: build_manifest(load_library()))
    MANIFEST.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    n = len(manifest["obligations"])
    tagged = sum(ob["funext"] for ob in manifest["obligations"])
    print(f"wrote {n} obligations ({tagged} funext-dependent) to {MANIFEST}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
