"""Board scenes and specification-teaching scripts for the stock puzzles.

Each entry pairs a scene (cells and pegs are locations, pieces are objects)
with a lesson script that runs the question protocol. All actions reuse the
taught `move` task, so a session needs trained knowledge before solving.
"""

from __future__ import annotations

TOWERS_SCENE = """\
# three pegs; disks stack because no two fit side by side
location peg1 0 0 9 60
location peg2 15 0 24 60
location peg3 30 0 39 60
object d3 green cylinder large 1 1 7 6
object d2 blue cylinder large 2 7 5 6
object d1 red cylinder small 3 13 3 6
"""

TOWERS_SCRIPT = """\
begin-scene
""" + TOWERS_SCENE + """\
end-scene
spec towers
? name of a verb :: move
? parameter :: a disk
? condition :: a block is not above 1
? condition :: finished
? parameter :: a location
? condition :: 1 is not in 2
? condition :: a disk smaller than 1 is not in 2
? condition :: finished
? parameter :: a location
? condition :: 1 is in 3
? condition :: finished
? parameter :: finished
? another action :: no
? goal of the problem :: the goal is the green cylinder is in peg3 and the blue cylinder is in peg3 and the red cylinder is in peg3
? goal of the problem :: finished
"""

# 3x3 sliding puzzle, six blank-moves from solved (blank ends at cell3)
EIGHT_SCENE = """\
location cell1 0 0 10 10
location cell2 10 0 20 10
location cell3 20 0 30 10
location cell4 0 10 10 20
location cell5 10 10 20 20
location cell6 20 10 30 20
location cell7 0 20 10 30
location cell8 10 20 20 30
location cell9 20 20 30 30
object b2 red cylinder small 2 2 6 6
object b3 blue cube small 12 2 6 6
object b1 red cube small 2 12 6 6
object b4 blue cylinder small 12 12 6 6
object b6 green cylinder small 22 12 6 6
object b7 yellow cube small 2 22 6 6
object b5 green cube small 12 22 6 6
object b8 yellow cylinder small 22 22 6 6
"""

EIGHT_SOLVED_SCENE = """\
location cell1 0 0 10 10
location cell2 10 0 20 10
location cell3 20 0 30 10
location cell4 0 10 10 20
location cell5 10 10 20 20
location cell6 20 10 30 20
location cell7 0 20 10 30
location cell8 10 20 20 30
location cell9 20 20 30 30
object b1 red cube small 2 2 6 6
object b2 red cylinder small 12 2 6 6
object b3 blue cube small 22 2 6 6
object b4 blue cylinder small 2 12 6 6
object b5 green cube small 12 12 6 6
object b6 green cylinder small 22 12 6 6
object b7 yellow cube small 2 22 6 6
object b8 yellow cylinder small 12 22 6 6
"""

_EIGHT_PROTOCOL = """\
spec eight-puzzle
? name of a verb :: move
? parameter :: a block
? condition :: finished
? parameter :: a location
? condition :: 2 is empty
? condition :: finished
? parameter :: a location
? condition :: 1 is in 3
? condition :: 2 is next to 3
? condition :: finished
? parameter :: finished
? another action :: no
? goal of the problem :: the goal is a red cube is in cell1 and a red cylinder is in cell2 and a blue cube is in cell3 and a blue cylinder is in cell4 and a green cube is in cell5 and a green cylinder is in cell6 and a yellow cube is in cell7 and a yellow cylinder is in cell8
? goal of the problem :: finished
"""

EIGHT_SCRIPT = "begin-scene\n" + EIGHT_SCENE + "end-scene\n" + _EIGHT_PROTOCOL
EIGHT_SOLVED_SCRIPT = ("begin-scene\n" + EIGHT_SOLVED_SCENE + "end-scene\n"
                       + _EIGHT_PROTOCOL)

TTT_SCENE = """\
location t1 0 0 10 10
location t2 10 0 20 10
location t3 20 0 30 10
location t4 0 10 10 20
location t5 10 10 20 20
location t6 20 10 30 20
location t7 0 20 10 30
location t8 10 20 20 30
location t9 20 20 30 30
location redpile 40 0 49 60
location greenpile 55 0 64 60
object r1 red cube small 41 1 8 6
object r2 red cube small 41 7 8 6
object r3 red cube small 41 13 8 6
object r4 red cube small 41 19 8 6
object r5 red cube small 41 25 8 6
object r6 red cube small 41 31 8 6
object g1 green cube small 56 1 8 6
object g2 green cube small 56 7 8 6
object g3 green cube small 56 13 8 6
object g4 green cube small 56 19 8 6
object g5 green cube small 56 25 8 6
object g6 green cube small 56 31 8 6
"""

_TTT_LINES = [
    ("t1", "t2", "t3"), ("t4", "t5", "t6"), ("t7", "t8", "t9"),
    ("t1", "t4", "t7"), ("t2", "t5", "t8"), ("t3", "t6", "t9"),
    ("t1", "t5", "t9"), ("t3", "t5", "t7"),
]

_TTT_GOALS = "".join(
    "? goal of the problem :: the goal is "
    + " and ".join(f"a red block is in {c}" for c in line) + "\n"
    for line in _TTT_LINES)

TTT_SCRIPT = ("begin-scene\n" + TTT_SCENE + "end-scene\n" + """\
spec tic-tac-toe
? name of a verb :: move
? parameter :: a red block
? condition :: 1 is in the redpile
? condition :: a block is not above 1
? condition :: finished
? parameter :: a location
? condition :: 2 is empty
? condition :: finished
? parameter :: finished
? another action :: yes
? name of a verb :: move
? parameter :: a green block
? condition :: 1 is in the greenpile
? condition :: a block is not above 1
? condition :: finished
? parameter :: a location
? condition :: 2 is empty
? condition :: finished
? parameter :: finished
? another action :: no
""" + _TTT_GOALS + "? goal of the problem :: finished\n")

FROGS_SCENE = """\
location c1 0 0 10 12
location c2 10 0 20 12
location c3 20 0 30 12
location c4 30 0 40 12
location c5 40 0 50 12
location c6 50 0 60 12
location c7 60 0 70 12
object r1 red cube small 2 3 6 6
object r2 red cube small 12 3 6 6
object r3 red cube small 22 3 6 6
object g1 green cube small 42 3 6 6
object g2 green cube small 52 3 6 6
object g3 green cube small 62 3 6 6
"""

FROGS_SCRIPT = ("begin-scene\n" + FROGS_SCENE + "end-scene\n" + """\
spec toads-and-frogs
? name of a verb :: move
? parameter :: a red block
? condition :: finished
? parameter :: a location
? condition :: 2 is empty
? condition :: finished
? parameter :: a location
? condition :: 1 is in 3
? condition :: 2 is right of 3
? condition :: 2 is next to 3
? condition :: finished
? parameter :: finished
? another action :: yes
? name of a verb :: move
? parameter :: a red block
? condition :: finished
? parameter :: a location
? condition :: 2 is empty
? condition :: finished
? parameter :: a location
? condition :: 1 is in 3
? condition :: finished
? parameter :: a location
? condition :: a green block is in 4
? condition :: 4 is right of 3
? condition :: 4 is next to 3
? condition :: 2 is right of 4
? condition :: 2 is next to 4
? condition :: finished
? parameter :: finished
? another action :: yes
? name of a verb :: move
? parameter :: a green block
? condition :: finished
? parameter :: a location
? condition :: 2 is empty
? condition :: finished
? parameter :: a location
? condition :: 1 is in 3
? condition :: 2 is left of 3
? condition :: 2 is next to 3
? condition :: finished
? parameter :: finished
? another action :: yes
? name of a verb :: move
? parameter :: a green block
? condition :: finished
? parameter :: a location
? condition :: 2 is empty
? condition :: finished
? parameter :: a location
? condition :: 1 is in 3
? condition :: finished
? parameter :: a location
? condition :: a red block is in 4
? condition :: 4 is left of 3
? condition :: 4 is next to 3
? condition :: 2 is left of 4
? condition :: 2 is next to 4
? condition :: finished
? parameter :: finished
? another action :: no
? goal of the problem :: the goal is a red block is in c5 and a red block is in c6 and a red block is in c7 and a green block is in c1 and a green block is in c2 and a green block is in c3
? goal of the problem :: finished
""")

SCRIPTS = {
    "towers": TOWERS_SCRIPT,
    "eight-puzzle": EIGHT_SCRIPT,
    "tic-tac-toe": TTT_SCRIPT,
    "toads-and-frogs": FROGS_SCRIPT,
}
