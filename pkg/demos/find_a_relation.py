"""Walk the word-independence pipeline until it finds a linear relation.

Setting: K = Q(u) with the shift sigma(u) = u + 1, delta = 0, and the
witness b = 1/u inside the division ring K(x; sigma).  The words are

    W_I = b^{i_1} (1-x)^{-1} b^{i_2} (1-x)^{-1} ... b^{i_r} (1-x)^{-1}

over bit tuples I.  Independence of all words up to length L means no
nonzero k-linear combination vanishes; the certifier decides this
exactly, and when the answer is Dependent it hands back an explicit
integer relation which this script re-verifies from scratch.

Run:  python3 demos/find_a_relation.py
"""

from orefree import (
    FunctionField, OreFraction, SkewEndo, SkewPair,
    build_word_W, freeness_certify, word_key,
)

ff = FunctionField(0, ["u"])
u = ff.var(0)
sigma = SkewEndo(ff, [u + 1], [u - 1])
pair = SkewPair.automorphism(sigma)
b = u.inverse()

print("K = Q(u), sigma(u) = u + 1, witness b = 1/u")
print()

for L in range(1, 4):
    cert = freeness_certify(pair, b, L)
    print("length <= %d: %d words, rank %d -> %s"
          % (L, cert.word_count, cert.rank, cert.verdict))
    if cert.verdict == "Dependent":
        print()
        print("the certifier found this integer relation:")
        terms = sorted(cert.relation.items())
        for word, c in terms:
            print("  %+d * W_%s" % (c, word_key(word) or "()"))

        print()
        print("re-evaluating the combination by exact Ore arithmetic:")
        total = OreFraction.zero(pair)
        for word, c in terms:
            total = total + build_word_W(pair, word, b) * ff.from_int(c)
        print("  sum == 0 is %s" % total.is_zero())

        print()
        print("so the words of length <= %d span only a rank-%d space,"
              % (L, cert.rank))
        print("while every shorter prefix of the family stayed independent.")
        break
