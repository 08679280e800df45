"""Smoke test for the cbrws extension module. Run after `maturin develop`
or after installing a built wheel."""

import cbrws

GRAPH = """
vertex v genus 1
vertex w genus 1
edge e v w n 0
"""

g = cbrws.Graph.from_gob(GRAPH)
sys = g.system()
assert len(sys) == 40, len(sys)
assert sys.reduce("a.v.1 a.v.1^-1") == "1"
assert sys.reduce("a.v.1 b.v.1") == "x.w b.v.1 a.v.1"
assert sys.words_equal("a.v.1 b.v.1", "x.w b.v.1 a.v.1")

verdict, lines = sys.check_complete()
assert verdict == "complete" and len(lines) == 84

assert g.block_decompose("a.w.1 a.v.1") == [("1", "1", "a.w.1"), ("a.v.1", "1", "1")]
tiers = g.lemma_precedence()
assert tiers[0] == ["a.w.1^-1"], tiers[0]
assert all(sys.reduce(r) == "1" for r in g.relators())

named = dict(cbrws.fixtures())
assert named["z2"].growth(4) == [1, 4, 8, 12, 16]
assert named["z"].growth(4) == [1, 2, 2, 2, 2]

broken = cbrws.System.from_rws("letters: a b\na b -> b\na b -> a\n")
assert broken.check_complete()[0] == "refuted"

partial = cbrws.System.from_rws(
    "letters: x y\nx x^-1 -> 1\nx^-1 x -> 1\ny y^-1 -> 1\ny^-1 y -> 1\nx y -> y x\n"
)
done = partial.complete("x^-1 > x > y^-1 > y")
assert len(done) == 8 and done.check_complete()[0] == "complete"
assert partial.rpo_greater("x", "y y y", "x > y")

try:
    sys.reduce("nonsense")
except ValueError:
    pass
else:
    raise AssertionError("unknown letter accepted")

print("smoke test passed")
