#pragma once

// Polygamma and theta constants computed to 30 digits (mpmath), then rounded.

namespace frozen {

struct Frozen {
    double x, psi, psi1, psi2;
};

inline const Frozen kPolygamma[] = {
    {0.35, -2.9710708698259454387, 9.2404590422058116967, -47.733789913235729365},
    {0.5, -1.9635100260214234794, 4.9348022005446793094, -16.828796644234319996},
    {1.0, -0.57721566490153286061, 1.6449340668482264365, -2.4041138063191885708},
    {2.5, 0.70315664064524318723, 0.49035775610023486497, -0.236204051641727403},
    {7.25, 1.9104535268837360284, 0.14787923315893216965, -0.021828952295197739222},
    {40.0, 3.6763273740348431259, 0.025315103841291028158, -0.00064082027183529858776},
};

struct FrozenTheta {
    double theta, d1, sigma_p, q, g_inv_2, h_2, d_2;
};

inline const FrozenTheta kTheta[] = {
    {0.5, 5.0570497877936243981, 0.24114013413882762059, 0.026761714858769286413, 0.29552779348301187544,
     -12.290130923573429804, 6.797701066033338577},
    {1, 2.5626208431855406688, 0.45015815807855303478, 0.098587633344915224535, 0.59994368859341866479,
     -5.6426228896732959179, 3.4812970637003424125},
    {2, 1.3396304405846758354, 0.77969680123367610791, 0.32664981403044619861, 1.2312014584422428657,
     -1.5393914290618703871, 1.8498522817575369715},
    {5, 0.61815271485033786083, 1.4280502036192905042, 1.2965502845289735232, 3.1945029348211871004,
     2.2826811145417825997, 0.86767685334934229351},
};

}  // namespace frozen
