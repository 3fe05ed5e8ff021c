#pragma once

#include "normtori/error.hpp"
#include "normtori/fixtures.hpp"
#include "normtori/normal_graph.hpp"
#include "normtori/normalize.hpp"
#include "normtori/oracle.hpp"
#include "normtori/position.hpp"
#include "normtori/serialize.hpp"
#include "normtori/sphere_graph.hpp"
