#!/usr/bin/env python3
"""Regenerates the frozen test fixtures from independent reference code.

Nothing here imports or runs the C++ library. Usage:
    python3 tools/oracles/gen_fixtures.py [repo_root]
"""
import random
import sys
import zlib
from pathlib import Path


def gf_mul(a, b):
    # Carry-less multiply, then reduce by x^8 + x^4 + x^3 + x + 1.
    p = 0
    for i in range(8):
        if (b >> i) & 1:
            p ^= a << i
    for bit in range(14, 7, -1):
        if (p >> bit) & 1:
            p ^= 0x11B << (bit - 8)
    return p


def gf_fixtures(out):
    table = bytes(gf_mul(a, b) for a in range(256) for b in range(256))
    (out / "gf_mul_table.bin").write_bytes(table)
    inv = [0] * 256
    for a in range(1, 256):
        inv[a] = next(b for b in range(1, 256) if gf_mul(a, b) == 1)
    (out / "gf_inv_table.bin").write_bytes(bytes(inv))


def crc_fixtures(out):
    cases = [
        ("zeros12", bytes(12)),
        ("check", b"123456789"),
        ("empty", b""),
        ("ramp12", bytes(range(12))),
        ("ff12", b"\xff" * 12),
    ]
    lines = ["# name\tinput_hex\tcrc32"]
    for name, data in cases:
        lines.append(f"{name}\t{data.hex()}\t{zlib.crc32(data):08x}")
    (out / "crc32_vectors.tsv").write_text("\n".join(lines) + "\n")


def altbeacon_fixtures(out):
    # Assembled field by field from the AltBeacon layout.
    rows = []
    cases = [
        (5, bytes(range(0x10, 0x20)), 0x0118, -59, 0x00),
        (1, bytes(16), 0x0118, -59, 0x00),
        (255, b"\xff" * 16, 0xABCD, -100, 0x7E),
        (42, bytes.fromhex("deadbeef00112233445566778899aabb"), 0x004C, 0, 0x01),
    ]
    for share_id, body, mfg, rssi, reserved in cases:
        frame = bytearray()
        frame += mfg.to_bytes(2, "little")
        frame += b"\xbe\xac"
        frame += bytes([share_id]) + body + bytes(3)
        frame += (rssi & 0xFF).to_bytes(1, "big")
        frame += bytes([reserved])
        assert len(frame) == 26
        rows.append(f"{share_id}\t{body.hex()}\t{mfg:04x}\t{rssi}\t{reserved}\t{frame.hex()}")
    (out / "altbeacon_frames.tsv").write_text(
        "# share_id\tbody\tmfg_id\tref_rssi\treserved\tframe\n" + "\n".join(rows) + "\n")


def synthetic_trace(seed, devices, scanners, duration, start=1_600_000_000):
    rng = random.Random(seed)
    rows = []
    for d in range(devices):
        for s in range(scanners):
            t = rng.randrange(0, 60)
            while t < duration:
                stay = rng.randrange(5, 120)
                dropout = rng.choice([0.0, 0.1, 0.4])
                for u in range(t, min(t + stay, duration)):
                    if rng.random() >= dropout:
                        rows.append((start + u, f"dev{d}", f"scan{s}", rng.randrange(-95, -40)))
                t += stay + rng.randrange(1, 90)
    rng.shuffle(rows)  # the loader must sort
    return rows


def brute_encounters(rows, gap):
    # Union-find over sightings of each pair: link two sightings when no
    # other sighting is needed to bridge them.
    by_pair = {}
    for ts, d, s, _ in rows:
        by_pair.setdefault((d, s), []).append(ts)
    count = 0
    total = 0
    for ts_list in by_pair.values():
        ts_list = sorted(ts_list)
        parent = list(range(len(ts_list)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(1, len(ts_list)):
            if ts_list[i] - ts_list[i - 1] <= gap:
                parent[find(i)] = find(i - 1)
        groups = {}
        for i, ts in enumerate(ts_list):
            groups.setdefault(find(i), []).append(ts)
        count += len(groups)
        total += sum(max(g) - min(g) + 1 for g in groups.values())
    return count, total


def brute_exposure(rows, k, n, t):
    # Enumerate every window of every pair and every slot within it.
    by_pair = {}
    for ts, d, s, _ in rows:
        by_pair.setdefault((d, s), set()).add(ts)
    w = n * t
    slots = 0
    for seen in by_pair.values():
        lo = min(seen) // w
        hi = max(seen) // w
        for win in range(lo, hi + 1):
            occupied = 0
            for i in range(n):
                a = win * w + i * t
                if any(a <= x < a + t for x in seen):
                    occupied += 1
            if occupied >= k:
                slots += occupied
    return slots


SCHEMES = [(1, 1, 1), (5, 6, 1), (3, 5, 1), (4, 5, 1), (5, 6, 2), (2, 3, 5), (6, 6, 1), (1, 6, 10)]
GAPS = [1, 3, 30, 60]


def trace_fixtures(root, out):
    rows = synthetic_trace(seed=600, devices=3, scanners=2, duration=600)
    lines = ["timestamp\tdevice_id\tscanner_id\trssi"]
    lines += [f"{ts}\t{d}\t{s}\t{r}" for ts, d, s, r in rows]
    (root / "data" / "trace_600s.tsv").write_text("\n".join(lines) + "\n")

    raw = len(rows)
    exp = ["# t\tk\tn\tslots_exposed\ttotal_exposure_s\traw_exposure_s"]
    for k, n, t in SCHEMES:
        s = brute_exposure(rows, k, n, t)
        exp.append(f"{t}\t{k}\t{n}\t{s}\t{s * t}\t{raw}")
    (out / "trace_600s_exposure.tsv").write_text("\n".join(exp) + "\n")

    enc = ["# gap\tencounters\ttotal_duration"]
    for g in GAPS:
        c, d = brute_encounters(rows, g)
        enc.append(f"{g}\t{c}\t{d}")
    (out / "trace_600s_encounters.tsv").write_text("\n".join(enc) + "\n")


def main():
    root = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parents[2])
    out = root / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    gf_fixtures(out)
    crc_fixtures(out)
    altbeacon_fixtures(out)
    trace_fixtures(root, out)


if __name__ == "__main__":
    main()
