// Published energy levels for m = 1 and m = -2 at s = 0.05; an empty list
// is a blank cell. Values are rounded to two decimals.
#pragma once

#include <vector>

namespace qdot::testdata {

struct TableCell {
    int m;
    double v;
    double a;
    double b;
    std::vector<double> levels;
};

inline const std::vector<TableCell>& published_levels()
{
    static const std::vector<TableCell> cells{
    {1, 50, 1, 0.0, {10.23, 20.31}},
    {1, 50, 2, 0.0, {7.97, 20.73}},
    {1, 100, 1, 0.0, {11.16, 22.08}},
    {1, 100, 2, 0.0, {8.85, 22.59}},
    {1, 50, 1, 0.5, {11.33, 22.50}},
    {1, 50, 2, 0.5, {8.84, 23.09}},
    {1, 100, 1, 0.5, {12.25, 24.24}},
    {1, 100, 2, 0.5, {9.73, 24.94}},
    {1, 50, 1, 1.0, {12.65, 24.95}},
    {1, 50, 2, 1.0, {9.92, 25.70}},
    {1, 100, 1, 1.0, {13.55, 26.64}},
    {1, 100, 2, 1.0, {10.81, 27.53}},
    {1, 50, 1, 1.5, {14.18, 27.68}},
    {1, 50, 2, 1.5, {11.23, 28.52}},
    {1, 100, 1, 1.5, {15.05, 29.29}},
    {1, 100, 2, 1.5, {12.08, 30.32}},
    {1, 50, 1, 2.0, {15.93, 30.67}},
    {1, 50, 2, 2.0, {12.74, 31.54}},
    {1, 100, 1, 2.0, {16.74, 32.18}},
    {1, 100, 2, 2.0, {13.56, 33.32}},
    {1, 50, 1, 2.5, {17.88}},
    {1, 50, 2, 2.5, {14.47, 34.68}},
    {1, 100, 1, 2.5, {18.62, 35.30}},
    {1, 100, 2, 2.5, {15.23, 36.47}},
    {1, 50, 1, 3.0, {}},
    {1, 50, 2, 3.0, {16.39, 37.92}},
    {1, 100, 1, 3.0, {20.68, 38.65}},
    {1, 100, 2, 3.0, {17.08, 39.75}},
    {1, 50, 1, 3.5, {}},
    {1, 50, 2, 3.5, {18.49}},
    {1, 100, 1, 3.5, {22.90, 42.20}},
    {1, 100, 2, 3.5, {19.10, 43.11}},
    {1, 50, 1, 4.0, {}},
    {1, 50, 2, 4.0, {20.75}},
    {1, 100, 1, 4.0, {25.27, 45.94}},
    {1, 100, 2, 4.0, {21.28, 46.47}},
    {1, 50, 1, 4.5, {}},
    {1, 50, 2, 4.5, {23.16}},
    {1, 100, 1, 4.5, {27.77}},
    {1, 100, 2, 4.5, {23.61, 49.82}},
    {1, 50, 1, 5.0, {}},
    {1, 50, 2, 5.0, {25.70}},
    {1, 100, 1, 5.0, {}},
    {1, 100, 2, 5.0, {26.07, 53.17}},
    {1, 50, 1, 5.5, {}},
    {1, 50, 2, 5.5, {}},
    {1, 100, 1, 5.5, {}},
    {1, 100, 2, 5.5, {28.65, 56.57}},
    {1, 50, 1, 6.0, {}},
    {1, 50, 2, 6.0, {}},
    {1, 100, 1, 6.0, {}},
    {1, 100, 2, 6.0, {31.32, 60.06}},
    {-2, 50, 1, 0.0, {10.23, 20.31}},
    {-2, 50, 2, 0.0, {7.97, 20.73}},
    {-2, 100, 1, 0.0, {11.16, 22.08}},
    {-2, 100, 2, 0.0, {8.85, 22.59}},
    {-2, 50, 1, 0.5, {9.36, 18.41}},
    {-2, 50, 2, 0.5, {7.33, 18.63}},
    {-2, 100, 1, 0.5, {10.26, 20.18}},
    {-2, 100, 2, 0.5, {8.18, 20.47}},
    {-2, 50, 1, 1.0, {8.71, 16.79}},
    {-2, 50, 2, 1.0, {6.89, 16.79}},
    {-2, 100, 1, 1.0, {9.57, 18.52}},
    {-2, 100, 2, 1.0, {7.70, 18.60}},
    {-2, 50, 1, 1.5, {8.26, 15.45}},
    {-2, 50, 2, 1.5, {6.66, 15.21}},
    {-2, 100, 1, 1.5, {9.08, 17.12}},
    {-2, 100, 2, 1.5, {7.40, 16.98}},
    {-2, 50, 1, 2.0, {8.02, 14.37}},
    {-2, 50, 2, 2.0, {6.61, 13.91}},
    {-2, 100, 1, 2.0, {8.77, 15.96}},
    {-2, 100, 2, 2.0, {7.29, 15.59}},
    {-2, 50, 1, 2.5, {7.96, 13.56}},
    {-2, 50, 2, 2.5, {6.74, 12.87}},
    {-2, 100, 1, 2.5, {8.63, 15.05}},
    {-2, 100, 2, 2.5, {7.33, 14.45}},
    {-2, 50, 1, 3.0, {8.08, 12.99}},
    {-2, 50, 2, 3.0, {7.01, 12.08}},
    {-2, 100, 1, 3.0, {8.66, 14.36}},
    {-2, 100, 2, 3.0, {7.53, 13.55}},
    {-2, 50, 1, 3.5, {8.34}},
    {-2, 50, 2, 3.5, {7.42, 11.53}},
    {-2, 100, 1, 3.5, {8.84, 13.90}},
    {-2, 100, 2, 3.5, {7.86, 12.87}},
    {-2, 50, 1, 4.0, {}},
    {-2, 50, 2, 4.0, {7.94, 11.21}},
    {-2, 100, 1, 4.0, {9.15, 13.64}},
    {-2, 100, 2, 4.0, {8.31, 12.41}},
    {-2, 50, 1, 4.5, {}},
    {-2, 50, 2, 4.5, {8.55, 11.09}},
    {-2, 100, 1, 4.5, {9.58, 13.58}},
    {-2, 100, 2, 4.5, {8.86, 12.15}},
    {-2, 50, 1, 5.0, {}},
    {-2, 50, 2, 5.0, {9.24, 11.18}},
    {-2, 100, 1, 5.0, {10.11, 13.70}},
    {-2, 100, 2, 5.0, {9.50, 12.08}},
    {-2, 50, 1, 5.5, {}},
    {-2, 50, 2, 5.5, {9.98, 11.43}},
    {-2, 100, 1, 5.5, {}},
    {-2, 100, 2, 5.5, {10.20, 12.19}},
    {-2, 50, 1, 6.0, {}},
    {-2, 50, 2, 6.0, {10.77, 11.84}},
    {-2, 100, 1, 6.0, {}},
    {-2, 100, 2, 6.0, {10.95, 12.46}},
    };
    return cells;
}

}  // namespace qdot::testdata
