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
# # Asking Knights and Knaves the same question
#
# A direct question "is processor 2 Normal?" gets opposite answers from a
# Knight and a Knave.  Wrapping it as "is it true that processor 2 is Normal
# if and only if you are a Knight?" makes both of them answer the same way.

# %%
from faultdiag import AlwaysYes, PredicateKind, Transcript, ngp, parse_world, respond

world = parse_world("KVN")
question = ngp(PredicateKind.IS_NORMAL, 2)
print(question.render())

for respondent in (0, 1):
    answer = respond(world, AlwaysYes(), Transcript(), respondent, question)
    print(f"processor {respondent} ({world[respondent].value}) says {answer.value}")

# %% [markdown]
# Normals answer whatever their strategy tells them.  Strategies see the
# transcript and the question, never the world.

# %%
from faultdiag import AlwaysNo, Scripted

t = Transcript()
print(respond(world, AlwaysNo(), t, 2, ngp(PredicateKind.IS_KNIGHT, 0)))
print(respond(world, Scripted(["yes"]), t, 2, ngp(PredicateKind.IS_KNIGHT, 0)))
print(t.question_count, "questions recorded")
