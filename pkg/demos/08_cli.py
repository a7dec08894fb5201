"""
Command line
============

Every computation is available from ``python3 -m padicl`` with a flat
key=value configuration.  This script drives the entry point in-process.
"""

# %%
from padicl.cli import main

main(["eval", "-", "field=Q", "modulus=5", "character=2:1", "p=5", "s=-3", "M=8", "--pretty"])

# %%
main(["invariants", "-", "field=Q", "modulus=5", "character=2:1", "p=5", "M=6", "--pretty"])

# %%
# Exact oracles: coefficients of the Bernoulli polynomial B_12(x).
main(["oracle", "-", "oracle=bernoulli", "k=12", "--json"])

# %%
# Bad configuration exits with code 1.
print("exit", main(["eval", "-", "field=Q", "modulus=5", "p=5"]))
