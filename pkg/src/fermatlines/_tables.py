# Hard-coded skew families.  Each entry is (s, k, i) for the line L^s_{k,i},
# listed in the member order of the reference tables they come from.

BUILTIN_FAMILIES = {
    3: [
        (0, 0, 0), (0, 1, 1), (0, 2, 2),
        (1, 1, 0), (1, 1, 1), (1, 1, 2),
    ],
    5: [
        (0, 0, 4), (0, 2, 0), (0, 3, 1), (0, 4, 3),
        (1, 0, 1), (1, 0, 4), (1, 2, 0), (1, 2, 3),
        (2, 0, 0), (2, 1, 2), (2, 3, 1), (2, 3, 3), (2, 3, 4),
    ],
    7: [
        (0, 0, 0), (0, 1, 3), (0, 2, 2), (0, 3, 5), (0, 4, 4), (0, 5, 6), (0, 6, 1),
        (1, 4, 0), (1, 4, 2), (1, 5, 3), (1, 5, 4), (1, 5, 5), (1, 6, 1), (1, 6, 6),
        (2, 2, 0), (2, 2, 5), (2, 2, 6), (2, 3, 1), (2, 3, 2), (2, 3, 3), (2, 6, 4),
    ],
    9: [
        (0, 4, 1), (0, 5, 2), (0, 6, 3), (0, 7, 7), (0, 8, 8), (0, 0, 0), (0, 1, 4), (0, 2, 5), (0, 3, 6),
        (1, 5, 0), (1, 5, 1), (1, 1, 2), (1, 1, 3), (1, 7, 4), (1, 5, 5), (1, 2, 6), (1, 2, 7), (1, 8, 8),
        (2, 1, 0), (2, 1, 1), (2, 6, 2), (2, 6, 3), (2, 2, 4), (2, 2, 5), (2, 6, 6), (2, 6, 7), (2, 6, 8),
    ],
    11: [
        (0, 5, 0), (0, 6, 1), (0, 7, 2), (0, 8, 3), (0, 9, 7), (0, 10, 8),
        (0, 0, 9), (0, 1, 4), (0, 2, 5), (0, 3, 6), (0, 4, 10),
        (1, 8, 0), (1, 8, 1), (1, 4, 2), (1, 4, 3), (1, 0, 4), (1, 0, 5),
        (1, 7, 6), (1, 7, 7), (1, 4, 8), (1, 1, 9), (1, 1, 10),
        (2, 1, 0), (2, 1, 1), (2, 1, 2), (2, 6, 3), (2, 6, 4), (2, 6, 5),
        (2, 2, 6), (2, 8, 7), (2, 8, 8), (2, 8, 9), (2, 8, 10),
    ],
}
