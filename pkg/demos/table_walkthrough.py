"""Classify every row of the built-in table and show which rule decided it."""

from og6lattice.og6 import classify_table

yn = {True: "yes", False: "no"}
matched = 0
for row, verdict, match in classify_table():
    matched += match
    deciding = [e["rule"] for e in verdict.evidence if e["result"] is not None]
    print(f"p={row.order} row {row.index:2}: induced {yn[verdict.induced]:3} "
          f"quotient {yn[verdict.quotient]:3} {'ok' if match else 'MISMATCH'}  "
          f"({', '.join(deciding)})")
print(f"{matched} rows agree with the table")
