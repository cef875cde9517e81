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
# # Checking every Normal behaviour
#
# Random Normals only sample the adversary.  The explorer forks at every
# question a Normal answers, so each answer sequence is run once.

# %%
from faultdiag import explore_branches, parse_world, replay

world = parse_world("KNVNK")
outcomes = explore_branches(world, "identify_normals")
for o in outcomes:
    print(o.branch_label or "-", sorted(o.result.normals), o.questions)

# %% [markdown]
# Any branch can be replayed from its answer sequence.

# %%
again = replay(world, "identify_normals", outcomes[-1].branch_id)
print(again.transcript == outcomes[-1].transcript)

# %% [markdown]
# The full check: every world with a Normal minority, every branch, every
# algorithm, for n up to 7.

# %%
from faultdiag import exhaustive_check

report = exhaustive_check(7)
print(report.worlds_checked, "worlds,", report.branches_checked, "branches,",
      report.rounds_audited, "pairing rounds audited,", report.case_a_calls, "CaseA stops")
print("passed" if report.passed else report.failures[:5])
