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
# # Identifying every Normal in fewer than 3n/2 questions
#
# A candidate X is put to the other processors one at a time.  Either the
# "No" answers reach the Normal budget (X is reliable and can classify the
# rest) or the "Yes" answers overtake the "No" answers, in which case the
# group questioned so far is at least half Normal and can be set aside while
# the remainder is solved first.

# %%
import random

from faultdiag import SeededRandom, Session, identify_normals, parse_world

world = parse_world("KNVNKKVNVKK")
report = identify_normals(Session(world, SeededRandom(), rng=random.Random(1)))
print("found:", sorted(report.normals), "true:", sorted(world.normals))
print(report.total_questions, "questions; 3n/2 =", 1.5 * len(world))

for rec in report.case_trace:
    print(f"X={rec.x} {rec.stopped_in}: yes={list(rec.yes_set)} no={list(rec.no_set)} "
          f"Z={rec.z} members={rec.members} budget={rec.budget} questions={rec.questions}")

# %% [markdown]
# A tighter budget, when the Normal count is known, can only help.

# %%
exact = identify_normals(Session(world, SeededRandom(), rng=random.Random(1)), normal_budget=len(world.normals))
print(exact.total_questions, "questions with the exact budget")
