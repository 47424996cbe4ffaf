#pragma once

#include "linefields/angles.hpp"
#include "linefields/catalog.hpp"
#include "linefields/connection.hpp"
#include "linefields/cover.hpp"
#include "linefields/error.hpp"
#include "linefields/field_io.hpp"
#include "linefields/fields.hpp"
#include "linefields/mesh.hpp"
#include "linefields/off_io.hpp"
#include "linefields/report.hpp"
#include "linefields/svg.hpp"
#include "linefields/verify.hpp"
