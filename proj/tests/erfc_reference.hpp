#pragma once

// erfc at 30 points, evaluated with mpmath at 40 significant digits and
// rounded to the nearest double.

#include <array>
#include <utility>

inline constexpr std::array<std::pair<double, double>, 30> kErfcReference{{
    {-6.0, 2.0},
    {-3.5, 1.9999992569016276},
    {-2.0, 1.9953222650189528},
    {-1.0, 1.8427007929497148},
    {-0.5, 1.5204998778130465},
    {-0.1, 1.1124629160182848},
    {0.0, 1.0},
    {1e-08, 0.9999999887162083},
    {0.01, 0.9887165844441503},
    {0.1, 0.887537083981715},
    {0.25, 0.7236736098317631},
    {0.5, 0.4795001221869535},
    {0.75, 0.28884436634648486},
    {1.0, 0.15729920705028513},
    {1.5, 0.033894853524689274},
    {1.99, 0.004888586800383003},
    {2.0, 0.004677734981047266},
    {2.01, 0.004475150644751763},
    {2.5, 0.0004069520174449589},
    {3.0, 2.209049699858544e-05},
    {4.0, 1.541725790028002e-08},
    {5.0, 1.537459794428035e-12},
    {6.0, 2.1519736712498913e-17},
    {8.0, 1.1224297172982926e-29},
    {10.0, 2.088487583762545e-45},
    {12.0, 1.3562611692059042e-64},
    {15.0, 7.212994172451207e-100},
    {20.0, 5.395865611607901e-176},
    {24.0, 1.6489825831519335e-252},
    {26.0, 5.663192408856143e-296},
}};
