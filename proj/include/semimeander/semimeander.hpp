#pragma once

#include "semimeander/rational.hpp"
#include "semimeander/linear_form.hpp"
#include "semimeander/chord_diagram.hpp"
#include "semimeander/gauss_code.hpp"
#include "semimeander/transforms.hpp"
#include "semimeander/lp.hpp"
#include "semimeander/optimizer.hpp"
#include "semimeander/tables.hpp"
#include "semimeander/knot_diagram.hpp"
#include "semimeander/bracket.hpp"
#include "semimeander/reducer.hpp"
#include "semimeander/bounds.hpp"
