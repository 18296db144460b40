from rimaps.geometry.Christoffel import Christoffel
from rimaps.geometry.FrameField import FrameField
from rimaps.geometry.GeometryAnalyzer import GeometryAnalyzer
from rimaps.geometry.ManifoldSpec import ManifoldSpec
from rimaps.geometry.ManifoldSpec import Point
from rimaps.geometry.ManifoldSpec import TangentVector
