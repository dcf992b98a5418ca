"""
Core parts of truncbt: Witt rings, sigma-linear algebra, Kraft data,
Newton polygons and the orbit action
"""
