"""How many ways can a node route its connections?

A node of magnitude n with r usable directions and a per-pair bound k admits
as many configurations as there are ways to write n as an ordered sum of r
terms, each at most k. The coefficient extraction does this without ever
materializing the configurations, and the enumerator cross-checks it.
"""

from gridlink import count_configs, count_table, enumerate_phi_k

print("A magnitude-2 node under bound 2 can route its two connections in")
words = enumerate_phi_k(2, 2)
print(f"{len(words)} ways: {', '.join(w.digits() for w in words)}")
print("(digits name directions: 1=top, 2=right, 3=bottom, 4=left)")
print()

print("Counting scales far beyond enumeration: a magnitude-20 node under")
print(f"bound 10 has {count_configs(20, 4, 10)} configurations,")
print(f"while magnitude 7 under bound 2 has only {count_configs(7, 4, 2)}.")
print()

print(count_table(4, 3))
print("Three things to notice, valid for every row:")
print(" * each row reads the same in both directions (swap a configuration")
print("   with its per-direction complement to see why),")
print(" * the peak sits at n = floor(r*k/2),")
print(" * the final entries of a row are the tetrahedral numbers 1, 4, 10, ...")
print("   for four neighbors, and the triangular numbers for three:")
print()
print(count_table(3, 3))
