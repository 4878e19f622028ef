"""First outputs of the seeded generator, recomputed from the published
xoshiro256++ and SplitMix64 algorithms in plain python integer arithmetic.
Pins the C++ implementation across platforms.
"""

MASK = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return x, (z ^ (z >> 31)) & MASK


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK


def stream(seed, sid):
    x = (seed ^ (0xA0761D6478BD642F * (sid + 1))) & MASK
    s = [0, 0, 0, 0]
    while True:
        for i in range(4):
            x, s[i] = splitmix64(x)
        if any(s):
            break
    while True:
        result = (rotl((s[0] + s[3]) & MASK, 23) + s[0]) & MASK
        t = (s[1] << 17) & MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        yield result


def main():
    for seed, sid in [(0, 0), (42, 0), (42, 1)]:
        g = stream(seed, sid)
        vals = [next(g) for _ in range(4)]
        print(f"seed={seed} stream={sid}: " + ", ".join(f"{v}ull" for v in vals))


if __name__ == "__main__":
    main()
