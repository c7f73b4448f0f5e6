"""Satellite instances shared by the twisted and acceptance suites."""

from tavkit.fingroup import subgroup_generated, symmetric
from tavkit.fpgroup import word_eval
from tavkit.homsearch import wirtinger_homs
from tavkit.knots import (BraidWord, braid_closure_presentation, braid_pd, choose_alpha,
                          collapse_pattern, knot_presentation, pattern_link, satellite_glue,
                          torus_presentation)


def power_braid(k):
    return BraidWord(2, [1] * k)


def collapsed_images(sat, group, base_images):
    return [word_eval(group, w, base_images) for w in collapse_pattern(sat)]


def factored_instance(base_pd, group, base_images, d, companion=None):
    """Satellite whose loop alpha maps to an element of order d, with the hom that
    sends the companion into the cyclic group generated by that element."""
    companion = companion or torus_presentation(3, 5)
    link, _ = choose_alpha(base_pd, group, base_images, target_order=d)
    sat = satellite_glue(link, companion)
    return sat, collapsed_images(sat, group, base_images)


def nonfactoring_instances(group=None):
    """Trefoil pattern with a trefoil companion: epimorphisms whose restriction to
    the companion group is not cyclic."""
    group = group or symmetric(4)
    pd = braid_pd(power_braid(3))
    sat = satellite_glue(pattern_link(pd, 1, 1), braid_closure_presentation(power_braid(3)))
    n = sat.meta["link_gens"]
    out = []
    for h in wirtinger_homs(sat, group, epi=True, modulo_conjugacy=True):
        if subgroup_generated(group, h.images[n:]).order > _cyclic_bound(group, h.images[n:]):
            out.append(h.images)
    return sat, out


def _cyclic_bound(group, elems):
    """Largest order of a single element among elems (a cyclic image is generated by one)."""
    return max((group.element_order(x) for x in elems), default=1)


def weight_setup():
    """S_4 with H = A_4, h a 3-cycle, trefoil base and trefoil companion."""
    s4 = symmetric(4)
    a4 = subgroup_generated(s4, [s4.index_of((1, 2, 0, 3)), s4.index_of((0, 2, 3, 1))])
    h = s4.index_of((0, 2, 3, 1))
    base_pd = braid_pd(power_braid(3))
    base = knot_presentation(base_pd)
    base_images = wirtinger_homs(base, s4, epi=True)[0].images
    comp = braid_closure_presentation(power_braid(3))
    comp_images = None
    for hm in wirtinger_homs(comp, s4, meridian_image=h, subgroup=a4.elements):
        if (set(subgroup_generated(s4, hm.images).elements) == set(a4.elements)
                and word_eval(s4, comp.marks["longitude"], hm.images) == s4.identity):
            comp_images = hm.images
            break
    return s4, a4, h, base_pd, base_images, comp, comp_images
