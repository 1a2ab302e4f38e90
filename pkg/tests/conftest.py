from hypothesis import strategies as st

from pirank.graph import LabeledGraph


def words(rank=3, min_size=0, max_size=12):
    letters = st.sampled_from([k for k in range(1, rank + 1)] + [-k for k in range(1, rank + 1)])
    return st.lists(letters, min_size=min_size, max_size=max_size).map(tuple)


def cyclic_words(rank=3, min_size=1, max_size=10):
    """Cyclically reduced nonempty words."""
    from pirank.words import cyclic_reduce

    return words(rank, min_size, max_size).map(lambda w: cyclic_reduce(w)[0]).filter(bool)


def bouquet_of_words(ws):
    """Loops reading each word, wedged at vertex 0 (not folded)."""
    verts, edges, nxt = [0], {}, 1
    for w in ws:
        prev = 0
        for i, x in enumerate(w):
            last = i == len(w) - 1
            v = 0 if last else nxt
            if not last:
                verts.append(nxt)
                nxt += 1
            edges[len(edges)] = (prev, v, x) if x > 0 else (v, prev, -x)
            prev = v
    return LabeledGraph(verts, edges, 0)
