#pragma once

#include "delpezzo/analysis.hpp"
#include "delpezzo/arith.hpp"
#include "delpezzo/catalog.hpp"
#include "delpezzo/counting.hpp"
#include "delpezzo/dyadic.hpp"
#include "delpezzo/forms.hpp"
#include "delpezzo/geometry.hpp"
#include "delpezzo/linalg.hpp"
#include "delpezzo/parallel.hpp"
#include "delpezzo/roots.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/torsor_s3.hpp"
