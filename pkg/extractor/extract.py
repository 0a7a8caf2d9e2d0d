#!/usr/bin/env python3
"""Launcher for the extractor CLI.

Usage mirrors the installed `pose-extract` script:
    python extract.py --video in.avi --illumination low -o out.jsonl
    python extract.py --batch dataset/ -o streams/
"""

from pose_extractor.cli import entrypoint

if __name__ == "__main__":
    entrypoint()
