"""Independent reference implementation used only by the tests.

Coefficients are sympy rational functions, elements are dicts from words
(tuples of letters) to coefficients, and normal forms come from applying
one rewriting rule at a time to the leftmost out-of-order pair.  None of
this shares code with the package.
"""

import sympy as sp

q, a, b = sp.symbols("q a b")

# letter order of the PBW basis z < e3 < e1 < e2
ORDER = {"z": 0, "e3": 1, "e1": 2, "e2": 3}

RULES = {
    ("e3", "z"): {("z", "e3"): 1},
    ("e1", "z"): {("z", "e1"): 1},
    ("e2", "z"): {("z", "e2"): 1},
    ("e1", "e3"): {("e3", "e1"): q**-2},
    ("e2", "e3"): {("e3", "e2"): q**2, ("z",): 1},
    ("e2", "e1"): {("e1", "e2"): q**-2, ("e3",): -(q**-2)},
}


def add_to(acc, word, c):
    c = sp.cancel(acc.get(word, 0) + c)
    if c == 0:
        acc.pop(word, None)
    else:
        acc[word] = c


def normal_form(elem, rules=RULES, order=ORDER, extra=None):
    """Rewrite until every word is ordered; ``extra`` may rewrite ordered words."""
    todo = dict(elem)
    done = {}
    while todo:
        word, c = todo.popitem()
        for i in range(len(word) - 1):
            pair = (word[i], word[i + 1])
            if pair in rules:
                for rep, d in rules[pair].items():
                    add_to(todo, word[:i] + rep + word[i + 2:], c * d)
                break
        else:
            rewritten = extra(word) if extra else None
            if rewritten is None:
                add_to(done, word, c)
            else:
                for w, d in rewritten.items():
                    add_to(todo, w, c * d)
    return done


def mul(x, y, **kw):
    out = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            add_to(out, w1 + w2, c1 * c2)
    return normal_form(out, **kw)


def word(*letters):
    return {tuple(letters): sp.Integer(1)}


def lin(*pairs):
    out = {}
    for c, w in pairs:
        for k, v in w.items():
            add_to(out, k, c * v)
    return out


# -- conversions to and from the package ------------------------------------------

def scalar_to_sympy(s):
    syms = (q, a, b)

    def poly(p):
        return sum(
            int(c) * sp.Mul(*[v**e for v, e in zip(syms, m)])
            for m, c in zip(p.monoms(), p.coeffs())
        )

    return sp.cancel(poly(s.num) / poly(s.den))


def u_to_words(x):
    """Package U+ element to oracle words ``z^i e3^j e1^k e2^l``."""
    out = {}
    for (i, j, k, l), v in x.terms.items():
        w = ("z",) * i + ("e3",) * j + ("e1",) * k + ("e2",) * l
        add_to(out, w, scalar_to_sympy(v))
    return out


def same(x, y):
    keys = set(x) | set(y)
    return all(sp.cancel(x.get(k, 0) - y.get(k, 0)) == 0 for k in keys)


# -- quotient A_{alpha,beta} by rewriting e3 e3 and z --------------------------------

def a_extra(alpha, beta):
    c1 = q**4 - 1
    c2 = q**2 * (q**2 + 1)
    c3 = q**6 / (1 - q**2)

    def extra(w):
        if "z" in w:
            i = w.index("z")
            return {w[:i] + w[i + 1:]: alpha}
        j = w.count("e3")
        if j < 2:
            return None
        # ordered word e3^j e1^k e2^l; e3^2 e1^k = q^(4k) e1^k e3^2
        k = w.count("e1")
        head = ("e3",) * (j - 2) + ("e1",) * k
        tail = w[j + k:]
        f = q ** (4 * k)
        return {
            head + ("e3", "e1", "e2") + tail: -c1 * f,
            head + ("e1",) + tail: -alpha * c2 * f,
            head + tail: -beta * c3 * f,
        }

    return extra


def a_normal_form(elem, alpha, beta):
    return normal_form(elem, extra=a_extra(alpha, beta))


# -- quantum Heisenberg algebra, order E1 < E3 < E2 ------------------------------------

H_ORDER = {"E1": 0, "E3": 1, "E2": 2}
H_RULES = {
    ("E3", "E1"): {("E1", "E3"): q**2},
    ("E2", "E3"): {("E3", "E2"): q**2},
    ("E2", "E1"): {("E1", "E2"): q**-2, ("E3",): -(q**-2)},
}


def h_normal_form(elem):
    return normal_form(elem, rules=H_RULES, order=H_ORDER)
