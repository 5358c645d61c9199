# This file computes the version number of source trees. Release builds made
# by "setup.py sdist" replace it with a static copy written by versioneer.

"""Git implementation of _version.py."""

import os
import re
import subprocess

UNKNOWN = {"version": "0+unknown", "full-revisionid": None, "dirty": None,
           "error": "unable to compute version", "date": None}


def get_keywords():
    """Get the keywords substituted by git during git-archive."""
    git_refnames = "$Format:%d$"
    git_full = "$Format:%H$"
    git_date = "$Format:%ci$"
    return {"refnames": git_refnames, "full": git_full, "date": git_date}


def versions_from_keywords(keywords):
    """Version information from expanded git-archive keywords, or None."""
    refnames = keywords["refnames"].strip()
    if refnames.startswith("$Format"):
        return None
    refs = {ref.strip() for ref in refnames.strip("()").split(",")}
    tags = sorted(ref[len("tag: "):] for ref in refs if ref.startswith("tag: "))
    if not tags:
        return None
    return {"version": tags[0], "full-revisionid": keywords["full"].strip(),
            "dirty": False, "error": None, "date": keywords["date"].strip()}


def run_git(args, root):
    """Run a git command in root, returning stripped stdout or None."""
    try:
        output = subprocess.run(["git"] + args, cwd=root, stdout=subprocess.PIPE,
                                stderr=subprocess.DEVNULL, check=True)
    except (OSError, subprocess.CalledProcessError):
        return None
    return output.stdout.decode("utf-8").strip()


def versions_from_vcs(root):
    """Version information from 'git describe', or None outside a checkout."""
    describe = run_git(["describe", "--tags", "--dirty", "--always", "--long"], root)
    full = run_git(["rev-parse", "HEAD"], root)
    if not describe or not full:
        return None
    dirty = describe.endswith("-dirty")
    if dirty:
        describe = describe[:-len("-dirty")]
    match = re.match(r"^(.+)-(\d+)-g([0-9a-f]+)$", describe)
    if match:
        tag, distance = match.group(1), int(match.group(2))
        version = tag if distance == 0 else "%s+%d.g%s" % (tag, distance, match.group(3))
    else:
        version = "0+untagged.g%s" % describe
    if dirty:
        version += ".dirty" if "+" in version else "+dirty"
    return {"version": version, "full-revisionid": full, "dirty": dirty,
            "error": None, "date": run_git(["show", "-s", "--format=%ci", "HEAD"], root)}


def get_versions():
    """Get version information or return the unknown default."""
    versions = versions_from_keywords(get_keywords())
    if versions:
        return versions
    root = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
    return versions_from_vcs(root) or dict(UNKNOWN)
