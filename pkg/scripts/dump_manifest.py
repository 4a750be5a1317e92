"""Write the reduction manifest (ids, problems, anchors, instance labels) as JSON."""

import argparse
import sys

from wlab.weihrauch import manifest_json

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", help="file to write; stdout when omitted")
    a = ap.parse_args()
    text = manifest_json()
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
