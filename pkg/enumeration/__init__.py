"""
同型を除いた列挙と正準形。
"""
