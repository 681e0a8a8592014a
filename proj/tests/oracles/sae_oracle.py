#!/usr/bin/env python3
"""Reference oracle for SAE (Dragonfly) over NIST P-256.

Pure-Python affine arithmetic with integer math; shares no code with the
C++ implementation. Writes tests/fixtures/sae_vectors.txt.
"""
import hashlib
import hmac
import random
import sys

OUT = sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/sae_vectors.txt"

P = 0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF
A = P - 3
B = 0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B
Q = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551
G = (0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
     0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5)
LOOPS = 40


def i2b(x, n=32):
    return x.to_bytes(n, "big")


def on_curve(pt):
    x, y = pt
    return (y * y - (x * x * x + A * x + B)) % P == 0


def add(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2 and (y1 + y2) % P == 0:
        return None
    if p1 == p2:
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, P) % P
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, P) % P
    x3 = (lam * lam - x1 - x2) % P
    return (x3, (lam * (x1 - x3) - y1) % P)


def mul(k, pt):
    r = None
    while k:
        if k & 1:
            r = add(r, pt)
        pt = add(pt, pt)
        k >>= 1
    return r


def neg(pt):
    return (pt[0], (-pt[1]) % P)


def kdf(key, label, context, bits):
    out = b""
    i = 1
    while len(out) * 8 < bits:
        out += hmac.new(key, i.to_bytes(2, "little") + label + context + bits.to_bytes(2, "little"),
                        hashlib.sha256).digest()
        i += 1
    return out[: bits // 8]


def pwe(password, mac_a, mac_b):
    key = max(mac_a, mac_b) + min(mac_a, mac_b)
    found = None
    for counter in range(1, LOOPS + 1):
        seed = hmac.new(key, password + bytes([counter]), hashlib.sha256).digest()
        value = int.from_bytes(kdf(seed, b"SAE Hunting and Pecking", i2b(P), 256), "big")
        if value >= P:
            continue
        rhs = (value ** 3 + A * value + B) % P
        if pow(rhs, (P - 1) // 2, P) != 1:
            continue
        if found is None:
            found = (value, rhs, seed)
    if found is None:
        raise RuntimeError("no element")
    x, rhs, seed = found
    y = pow(rhs, (P + 1) // 4, P)
    if (seed[-1] & 1) != (y & 1):
        y = P - y
    return (x, y)


def commit(pw_elem, rand, mask):
    scalar = (rand + mask) % Q
    element = neg(mul(mask, pw_elem))
    return scalar, element


def keys(pw_elem, rand, own, peer):
    k_pt = mul(rand, add(mul(peer[0], pw_elem), peer[1]))
    k = i2b(k_pt[0])
    keyseed = hmac.new(b"\x00" * 32, k, hashlib.sha256).digest()
    ctx = i2b((own[0] + peer[0]) % Q)
    out = kdf(keyseed, b"SAE KCK and PMK", ctx, 512)
    return k, out[:32], out[32:]


def elem(pt):
    return i2b(pt[0]) + i2b(pt[1])


def confirm(kck, send_confirm, own, peer):
    msg = send_confirm.to_bytes(2, "little") + i2b(own[0]) + i2b(peer[0]) + elem(own[1]) + elem(peer[1])
    return hmac.new(kck, msg, hashlib.sha256).digest()


def token(secret, mac, issued_at):
    return hmac.new(secret, mac + issued_at.to_bytes(8, "big"), hashlib.sha256).digest()


def h(b):
    return b.hex()


def main():
    assert on_curve(G)
    rng = random.Random(0xD2A60F)
    lines = [
        "# SAE reference vectors over P-256, generated by tests/oracles/sae_oracle.py",
        "# pwe <password> <mac_a> <mac_b> <x> <y>",
        "# exchange <password> <mac_a> <mac_b> <rand_a> <mask_a> <rand_b> <mask_b>"
        " <scalar_a> <elem_a> <scalar_b> <elem_b> <k> <kck> <pmk> <confirm_a(sc=1)> <confirm_b(sc=1)>",
        "# token <secret> <mac> <issued_at_hex8> <tag>",
    ]
    ap = bytes.fromhex("B827EB6C617A")
    sta = bytes.fromhex("020000000001")
    cases = [(b"12345678", ap, sta), (b"12345679", ap, sta)]
    for _ in range(6):
        n = rng.randint(8, 63)
        pw = bytes(rng.choice(b"abcdefghijklmnopqrstuvwxyz0123456789") for _ in range(n))
        a = bytes(rng.getrandbits(8) for _ in range(6))
        b = bytes(rng.getrandbits(8) for _ in range(6))
        cases.append((pw, a, b))
    for pw, a, b in cases:
        e = pwe(pw, a, b)
        assert on_curve(e)
        lines.append(f"pwe {h(pw)} {h(a)} {h(b)} {h(i2b(e[0]))} {h(i2b(e[1]))}")

    for pw, a, b in cases[:4]:
        e = pwe(pw, a, b)
        ra, ma, rb, mb = (rng.randrange(2, Q) for _ in range(4))
        ca = commit(e, ra, ma)
        cb = commit(e, rb, mb)
        k_a, kck_a, pmk_a = keys(e, ra, ca, cb)
        k_b, kck_b, pmk_b = keys(e, rb, cb, ca)
        assert (k_a, kck_a, pmk_a) == (k_b, kck_b, pmk_b)
        lines.append(" ".join([
            "exchange", h(pw), h(a), h(b),
            h(i2b(ra)), h(i2b(ma)), h(i2b(rb)), h(i2b(mb)),
            h(i2b(ca[0])), h(elem(ca[1])), h(i2b(cb[0])), h(elem(cb[1])),
            h(k_a), h(kck_a), h(pmk_a),
            h(confirm(kck_a, 1, ca, cb)), h(confirm(kck_b, 1, cb, ca)),
        ]))

    for _ in range(3):
        secret = bytes(rng.getrandbits(8) for _ in range(32))
        mac = bytes(rng.getrandbits(8) for _ in range(6))
        at = rng.randrange(0, 10**7)
        lines.append(f"token {h(secret)} {h(mac)} {at:016x} {h(token(secret, mac, at))}")

    with open(OUT, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
