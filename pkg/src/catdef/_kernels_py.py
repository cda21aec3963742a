"""Pure-Python table kernels.

Every function here has a signature-identical compiled twin in
``_kernels.pyx``; ``catdef.kernels`` picks one at import time.  All inputs
are plain int lists over a compiled category table:

    m          number of morphisms
    dom, cod   length-m lists of object indices
    comp       flat length m*m list, comp[g*m + f] = index of g∘f, -1 if
               the pair is not composable

Object/morphism indices refer to the lexicographically sorted id lists of
the owning FinCategory, so witnesses are reproducible across backends.
"""

BACKEND = "python"


def assoc_witness(m, comp):
    """First composable triple (h, g, f) with h(gf) != (hg)f, else None."""
    for h in range(m):
        row_h = h * m
        for g in range(m):
            hg = comp[row_h + g]
            if hg < 0:
                continue
            row_g = g * m
            row_hg = hg * m
            for f in range(m):
                gf = comp[row_g + f]
                if gf < 0:
                    continue
                left = comp[row_h + gf]
                right = comp[row_hg + f]
                if left != right:
                    return (h, g, f)
    return None


def identity_witness(m, dom, cod, ident_of_obj, comp):
    """First morphism f with id∘f != f or f∘id != f, else None."""
    for f in range(m):
        i_cod = ident_of_obj[cod[f]]
        i_dom = ident_of_obj[dom[f]]
        if comp[i_cod * m + f] != f:
            return (f, i_cod, 0)
        if comp[f * m + i_dom] != f:
            return (f, i_dom, 1)
    return None


def find_inverse(m, dom, cod, ident_of_obj, comp, f):
    """Index of the two-sided inverse of f, or -1."""
    want_fg = ident_of_obj[cod[f]]
    want_gf = ident_of_obj[dom[f]]
    for g in range(m):
        if dom[g] != cod[f] or cod[g] != dom[f]:
            continue
        if comp[f * m + g] == want_fg and comp[g * m + f] == want_gf:
            return g
    return -1


def functor_witness(sm, sdom, scod, sident, scomp, tdom, tcod, tident, tcomp,
                    obj_map, mor_map, s_nobj):
    """First functor-law violation, else None.

    Witness codes: (0, f)        dom/cod not preserved
                   (1, o)        identity not preserved
                   (2, g, f)     composite not preserved
    """
    tm = len(tdom)
    for f in range(sm):
        ff = mor_map[f]
        if ff < 0 or ff >= tm:
            return (0, f)
        if tdom[ff] != obj_map[sdom[f]] or tcod[ff] != obj_map[scod[f]]:
            return (0, f)
    for o in range(s_nobj):
        if mor_map[sident[o]] != tident[obj_map[o]]:
            return (1, o)
    for g in range(sm):
        row = g * sm
        for f in range(sm):
            gf = scomp[row + f]
            if gf < 0:
                continue
            if tcomp[mor_map[g] * tm + mor_map[f]] != mor_map[gf]:
                return (2, g, f)
    return None


def naturality_witness(sm, sdom, scod, tcomp, tm, f_mor, g_mor, comp_at):
    """First source morphism whose naturality square fails, else None.

    f_mor/g_mor: morphism tables of the two functors; comp_at: component of
    the transformation at each source object.
    """
    for u in range(sm):
        left = tcomp[comp_at[scod[u]] * tm + f_mor[u]]
        right = tcomp[g_mor[u] * tm + comp_at[sdom[u]]]
        if left < 0 or right < 0 or left != right:
            return u
    return None


def _cones(n_obj, m, dom, cod, comp, homs_off, homs_flat,
           k, d_obj, arr_src, arr_dst, arr_mor, is_limit):
    """All (apex, legs) cones over/under the diagram, in canonical order."""
    out = []
    n_arr = len(arr_mor)
    for apex in range(n_obj):
        cand = []
        ok = True
        for i in range(k):
            if is_limit:
                a, b = apex, d_obj[i]
            else:
                a, b = d_obj[i], apex
            lo = homs_off[a * n_obj + b]
            hi = homs_off[a * n_obj + b + 1]
            legs_i = homs_flat[lo:hi]
            if not legs_i:
                ok = False
                break
            cand.append(legs_i)
        if not ok:
            continue
        # depth-first product with early arrow pruning
        stack = [(0, ())]
        while stack:
            i, legs = stack.pop()
            if i == k:
                out.append((apex, legs))
                continue
            for leg in reversed(cand[i]):
                new = legs + (leg,)
                good = True
                for a in range(n_arr):
                    s, d, mo = arr_src[a], arr_dst[a], arr_mor[a]
                    if s >= len(new) or d >= len(new):
                        continue
                    if is_limit:
                        # d(α)∘leg_s = leg_d
                        if comp[mo * m + new[s]] != new[d]:
                            good = False
                            break
                    else:
                        # leg_d∘d(α) = leg_s
                        if comp[new[d] * m + mo] != new[s]:
                            good = False
                            break
                if good:
                    stack.append((i + 1, new))
    return out


def universal_cones(n_obj, m, dom, cod, comp, homs_off, homs_flat,
                    k, d_obj, arr_src, arr_dst, arr_mor, is_limit):
    """All universal (co)cones, canonical order; [] if the (co)limit is missing."""
    cones = _cones(n_obj, m, dom, cod, comp, homs_off, homs_flat,
                   k, d_obj, arr_src, arr_dst, arr_mor, is_limit)
    winners = []
    for apex_u, legs_u in cones:
        universal = True
        for apex_c, legs_c in cones:
            if is_limit:
                a, b = apex_c, apex_u
            else:
                a, b = apex_u, apex_c
            lo = homs_off[a * n_obj + b]
            hi = homs_off[a * n_obj + b + 1]
            n_med = 0
            for h in homs_flat[lo:hi]:
                fits = True
                for i in range(k):
                    if is_limit:
                        # legs_u[i]∘h = legs_c[i]
                        if comp[legs_u[i] * m + h] != legs_c[i]:
                            fits = False
                            break
                    else:
                        if comp[h * m + legs_u[i]] != legs_c[i]:
                            fits = False
                            break
                if fits:
                    n_med += 1
                    if n_med > 1:
                        break
            if n_med != 1:
                universal = False
                break
        if universal:
            winners.append((apex_u, legs_u))
    return winners
