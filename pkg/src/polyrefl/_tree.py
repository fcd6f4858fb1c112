"""Stack-safe traversal helpers for the expression trees.

Every pass over a syntax tree (evaluation, normalization, reification,
printing) goes through :func:`fold`, so expressions far deeper than the
interpreter recursion limit are handled.
"""

import dataclasses
import functools
import gc

_EXPAND = object()
_COMBINE = object()


class Node:
    """Marker base class for syntax-tree dataclasses."""

    __slots__ = ()


def gc_paused(fn):
    """Run ``fn`` with the cyclic collector off.

    Large syntax trees are acyclic, so reference counting reclaims them; the
    cyclic collector would only rescan them repeatedly while they are built.
    """
    @functools.wraps(fn)
    def run(*args, **kw):
        was = gc.isenabled()
        gc.disable()
        try:
            return fn(*args, **kw)
        finally:
            if was:
                gc.enable()
    return run


def fold(root, ctx, expand, combine):
    """Post-order traversal with an explicit work-list.

    ``expand(node, ctx)`` returns ``(children, memo)`` where ``children`` is a
    sequence of ``(child, child_ctx)`` pairs.  ``combine(node, ctx, memo,
    results)`` receives the children's results in order.  Children are
    combined left to right, so side effects (variable-map allocation) happen
    in first-occurrence order.
    """
    out = []
    stack = [(_EXPAND, root, ctx, None, 0)]
    pop = stack.pop
    push = stack.append
    while stack:
        tag, node, c, memo, n = pop()
        if tag is _EXPAND:
            kids, memo = expand(node, c)
            push((_COMBINE, node, c, memo, len(kids)))
            for kid, kctx in reversed(kids):
                push((_EXPAND, kid, kctx, None, 0))
        else:
            if n:
                args = out[-n:]
                del out[-n:]
            else:
                args = ()
            out.append(combine(node, c, memo, args))
    return out[0]


def children(node):
    return [getattr(node, f.name) for f in dataclasses.fields(node)
            if isinstance(getattr(node, f.name), Node)]


def same_tree(a, b):
    """Structural equality without recursion (dataclass ``__eq__`` recurses)."""
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if type(x) is not type(y):
            return False
        if not isinstance(x, Node):
            if x != y:
                return False
            continue
        for f in dataclasses.fields(x):
            if not f.compare:
                continue
            u, v = getattr(x, f.name), getattr(y, f.name)
            if isinstance(u, Node) or isinstance(v, Node):
                stack.append((u, v))
            elif u != v:
                return False
    return True


def size(node):
    """Number of constructors in a tree."""
    count = 0
    stack = [node]
    while stack:
        n = stack.pop()
        count += 1
        stack.extend(children(n))
    return count
