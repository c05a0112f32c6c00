SQL = """
SELECT *
FROM table
WHERE name = 'def'
"""


def query(conn, name):
    sql = """
        SELECT id
        FROM users
        WHERE name = %s
    """
    return conn.execute(sql, (name,))
