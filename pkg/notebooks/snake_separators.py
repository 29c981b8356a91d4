"""
Random lines versus the optimal line on the snake
=================================================

The snake is a path of small disks folded into columns.  A vertical line
through a connector disk separates it with a single crossing, but a line of
random slope has to cut through many columns.  This script shows how many
random slopes it takes to get close.
"""

import numpy as np

from disksever import build_graph, gen_snake, optimal_line_separator, random_line_separator

q = 21
snake = gen_snake(q)
graph = build_graph(snake)
print(f"snake q={q}: {snake.n} disks, {graph.m} edges")

# The optimum is found by sweeping every direction where two disks swap order.
best = optimal_line_separator(snake)
print(f"optimal line crosses {best.size} disk(s); sides {best.left} / {best.right}")

# Random slopes: the best of k samples, for growing k.
for k in (1, 5, 20, 100):
    sizes = [random_line_separator(snake, k, seed=s).size for s in range(10)]
    print(f"k={k:3d}: mean {np.mean(sizes):6.2f}, best {min(sizes)}")
