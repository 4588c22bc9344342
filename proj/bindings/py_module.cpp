#include <pybind11/pybind11.h>
PYBIND11_MODULE(_lpbody, m) { m.doc() = "placeholder"; }
