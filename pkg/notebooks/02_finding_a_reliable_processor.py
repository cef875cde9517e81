# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
# ---

# %% [markdown]
# # Finding one reliable processor
#
# Two ways to find a Knight or a Knave when Normals are a strict minority:
# scanning a line (at most n - 1 questions) and a pairing tournament (at most
# n - popcount(n) questions).

# %%
import random

from faultdiag import SeededRandom, Session, find_all_knights, find_reliable_pairing, line_scan, parse_world, popcount

world = parse_world("NKVNKKVNV")
session = Session(world, SeededRandom(), rng=random.Random(4))
scan = line_scan(session)
print("line scan:", scan.trusted, world[scan.trusted].value, f"{scan.questions} questions")

session = Session(world, SeededRandom(), rng=random.Random(4))
pairing = find_reliable_pairing(session)
print("pairing:  ", pairing.trusted, world[pairing.trusted].value, f"{pairing.questions} questions")

# %% [markdown]
# Each pairing round keeps the reliable processors in the majority.  The
# audit records the ground-truth counts behind that.

# %%
for k, audit in enumerate(pairing.rounds):
    print(k, f"r={audit.reliable_before} n={audit.normal_before}",
          f"-> r3={audit.reliable_after_step3} n3={audit.normal_after_step3}",
          "kept unpaired" if audit.kept_unpaired else "")

# %% [markdown]
# On an all-Knight population every pair answers Yes, which is the worst case.

# %%
from faultdiag import AlwaysYes

for n in (6, 7, 8, 100):
    q = find_reliable_pairing(Session(parse_world("K" * n), AlwaysYes())).questions
    print(f"n={n:<4} questions={q:<4} n - popcount(n) = {n - popcount(n)}   n - 1 = {n - 1}")

# %% [markdown]
# Once a reliable processor is known, asking it about everyone finds all the
# Knights.

# %%
report = find_all_knights(Session(world, SeededRandom(), rng=random.Random(4)))
print(sorted(report.knights), sorted(world.knights), report.total_questions, "<=", 2 * len(world) - 1)
