from rimaps.maps.FrameBundle import FrameBundle
from rimaps.maps.FrameBundle import PivotRecord
from rimaps.maps.JacobianData import JacobianData
from rimaps.maps.MapAnalyzer import MapAnalyzer
from rimaps.maps.MapSpec import MapSpec
