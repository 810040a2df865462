"""Writes spider_mini/dev.json and oracle_simplified.json.

Each multi-table item carries a hand-written query against the flattened
single-table view (virtual table = db_id, columns `table.column`). Every gold
query is executed against the fixture databases before anything is written.
"""
import json
import pathlib

from fixture_db import connect

HERE = pathlib.Path(__file__).resolve().parent
FIXTURES = HERE.parent / "fixtures"

# (db_id, question, gold, simplified or None for single-table items)
ITEMS = [
    ("concert_singer", "Show the name of each concert and the name of its stadium.",
     "SELECT T1.concert_Name, T2.Name FROM concert AS T1 JOIN stadium AS T2 ON T1.Stadium_ID = T2.Stadium_ID",
     "SELECT concert.concert_Name, stadium.Name FROM concert_singer"),
    ("concert_singer", "How many concerts were held at each stadium? List the stadium name and the count.",
     "SELECT T2.Name, count(*) FROM concert AS T1 JOIN stadium AS T2 ON T1.Stadium_ID = T2.Stadium_ID GROUP BY T1.Stadium_ID",
     "SELECT stadium.Name, COUNT(*) FROM concert_singer GROUP BY concert.Stadium_ID"),
    ("concert_singer", "Which singers performed in concerts held in 2014?",
     "SELECT DISTINCT T2.Name FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.Singer_ID = T2.Singer_ID JOIN concert AS T3 ON T1.concert_ID = T3.concert_ID WHERE T3.Year = '2014'",
     "SELECT DISTINCT singer.Name FROM concert_singer WHERE concert.Year = '2014'"),
    ("concert_singer", "What is the name and capacity of the stadium with the most concerts after 2013?",
     "SELECT T2.Name, T2.Capacity FROM concert AS T1 JOIN stadium AS T2 ON T1.Stadium_ID = T2.Stadium_ID WHERE T1.Year > '2013' GROUP BY T2.Stadium_ID ORDER BY count(*) DESC LIMIT 1",
     "SELECT stadium.Name, stadium.Capacity FROM concert_singer WHERE concert.Year > '2013' GROUP BY stadium.Stadium_ID ORDER BY COUNT(*) DESC LIMIT 1"),
    ("concert_singer", "List the names of singers and the number of concerts each performed in.",
     "SELECT T2.Name, count(*) FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.Singer_ID = T2.Singer_ID GROUP BY T2.Singer_ID",
     "SELECT singer.Name, COUNT(*) FROM concert_singer GROUP BY singer.Singer_ID"),
    ("concert_singer", "Find the names of stadiums that hosted no concert in 2015.",
     "SELECT Name FROM stadium WHERE Stadium_ID NOT IN (SELECT Stadium_ID FROM concert WHERE Year = '2015')",
     "SELECT stadium.Name FROM concert_singer WHERE stadium.Stadium_ID NOT IN (SELECT concert.Stadium_ID FROM concert_singer WHERE concert.Year = '2015')"),
    ("concert_singer", "Show the themes of concerts held at stadiums with capacity above 10000.",
     "SELECT T1.Theme FROM concert AS T1 JOIN stadium AS T2 ON T1.Stadium_ID = T2.Stadium_ID WHERE T2.Capacity > 10000",
     "SELECT concert.Theme FROM concert_singer WHERE stadium.Capacity > 10000"),
    ("concert_singer", "What are the names of concerts with the singer Justin Brown?",
     "SELECT T3.concert_Name FROM singer_in_concert AS T1 JOIN singer AS T2 ON T1.Singer_ID = T2.Singer_ID JOIN concert AS T3 ON T1.concert_ID = T3.concert_ID WHERE T2.Name = 'Justin Brown'",
     "SELECT concert.concert_Name FROM concert_singer WHERE singer.Name = 'Justin Brown'"),
    ("concert_singer", "Give the average age of singers who performed in any concert.",
     "SELECT avg(Age) FROM singer WHERE Singer_ID IN (SELECT Singer_ID FROM singer_in_concert)",
     "SELECT AVG(singer.Age) FROM concert_singer WHERE singer.Singer_ID IN (SELECT singer_in_concert.Singer_ID FROM concert_singer)"),
    ("college", "List each instructor's name with the name of their department.",
     "SELECT T1.name, T2.dept_name FROM instructor AS T1 JOIN department AS T2 ON T1.dept_id = T2.dept_id",
     "SELECT instructor.name, department.dept_name FROM college"),
    ("college", "What is the total salary paid per building?",
     "SELECT T2.building, sum(T1.salary) FROM instructor AS T1 JOIN department AS T2 ON T1.dept_id = T2.dept_id GROUP BY T2.building",
     "SELECT department.building, SUM(instructor.salary) FROM college GROUP BY department.building"),
    ("college", "Find the names of students who took a course in Fall 2017.",
     "SELECT DISTINCT T1.name FROM student AS T1 JOIN takes AS T2 ON T1.student_id = T2.student_id WHERE T2.semester = 'Fall' AND T2.year = 2017",
     "SELECT DISTINCT student.name FROM college WHERE takes.semester = 'Fall' AND takes.year = 2017"),
    ("college", "Show course titles and the number of students enrolled in each, most popular first.",
     "SELECT T1.title, count(*) FROM course AS T1 JOIN takes AS T2 ON T1.course_id = T2.course_id GROUP BY T1.course_id ORDER BY count(*) DESC, T1.title",
     "SELECT course.title, COUNT(*) FROM college GROUP BY course.course_id ORDER BY COUNT(*) DESC, course.title"),
    ("college", "Which departments have a budget over 80000 and offer a 4-credit course?",
     "SELECT DISTINCT T1.dept_name FROM department AS T1 JOIN course AS T2 ON T1.dept_id = T2.dept_id WHERE T1.budget > 80000 AND T2.credits = 4",
     "SELECT DISTINCT department.dept_name FROM college WHERE department.budget > 80000 AND course.credits = 4"),
    ("college", "List the grades received by students in the Physics department.",
     "SELECT T2.grade FROM student AS T1 JOIN takes AS T2 ON T1.student_id = T2.student_id JOIN department AS T3 ON T1.dept_id = T3.dept_id WHERE T3.dept_name = 'Physics'",
     "SELECT takes.grade FROM college WHERE department.dept_name = 'Physics'"),
    ("college", "What is the highest instructor salary in each department? Show department names.",
     "SELECT T2.dept_name, max(T1.salary) FROM instructor AS T1 JOIN department AS T2 ON T1.dept_id = T2.dept_id GROUP BY T2.dept_name",
     "SELECT department.dept_name, MAX(instructor.salary) FROM college GROUP BY department.dept_name"),
    ("college", "Find titles of courses nobody took in 2018.",
     "SELECT title FROM course WHERE course_id NOT IN (SELECT course_id FROM takes WHERE year = 2018)",
     "SELECT course.title FROM college WHERE course.course_id NOT IN (SELECT takes.course_id FROM college WHERE takes.year = 2018)"),
    ("college", "How many credits has each student earned from courses graded A? List student names.",
     "SELECT T1.name, sum(T3.credits) FROM student AS T1 JOIN takes AS T2 ON T1.student_id = T2.student_id JOIN course AS T3 ON T2.course_id = T3.course_id WHERE T2.grade = 'A' GROUP BY T1.student_id",
     "SELECT student.name, SUM(course.credits) FROM college WHERE takes.grade = 'A' GROUP BY student.student_id"),
    ("retail", "List the names of customers who placed an order with status Shipped.",
     "SELECT DISTINCT T1.`Customer Name` FROM customers AS T1 JOIN orders AS T2 ON T1.CustomerID = T2.CustomerID WHERE T2.Status = 'Shipped'",
     "SELECT DISTINCT `customers.Customer Name` FROM retail WHERE orders.Status = 'Shipped'"),
    ("retail", "What is the total quantity sold per product category?",
     "SELECT T1.Category, sum(T2.Quantity) FROM products AS T1 JOIN order_items AS T2 ON T1.ProductID = T2.ProductID GROUP BY T1.Category",
     "SELECT products.Category, SUM(order_items.Quantity) FROM retail GROUP BY products.Category"),
    ("retail", "How many orders did each city place?",
     "SELECT T1.City, count(*) FROM customers AS T1 JOIN orders AS T2 ON T1.CustomerID = T2.CustomerID GROUP BY T1.City",
     "SELECT customers.City, COUNT(*) FROM retail GROUP BY customers.City"),
    ("retail", "Which products were bought by customers in the Corporate segment?",
     "SELECT DISTINCT T4.`Product Name` FROM customers AS T1 JOIN orders AS T2 ON T1.CustomerID = T2.CustomerID JOIN order_items AS T3 ON T2.OrderID = T3.OrderID JOIN products AS T4 ON T3.ProductID = T4.ProductID WHERE T1.Segment = 'Corporate'",
     "SELECT DISTINCT `products.Product Name` FROM retail WHERE customers.Segment = 'Corporate'"),
    ("retail", "List order dates together with the revenue of each order, largest first.",
     "SELECT T1.`Order Date`, sum(T2.Quantity * T3.Price * (1 - T2.Discount)) AS revenue FROM orders AS T1 JOIN order_items AS T2 ON T1.OrderID = T2.OrderID JOIN products AS T3 ON T2.ProductID = T3.ProductID GROUP BY T1.OrderID ORDER BY revenue DESC",
     "SELECT `orders.Order Date`, SUM(order_items.Quantity * products.Price * (1 - order_items.Discount)) AS revenue FROM retail GROUP BY orders.OrderID ORDER BY revenue DESC"),
    ("retail", "Find the names of customers with no shipped order.",
     "SELECT `Customer Name` FROM customers WHERE CustomerID NOT IN (SELECT CustomerID FROM orders WHERE Status = 'Shipped')",
     "SELECT `customers.Customer Name` FROM retail WHERE customers.CustomerID NOT IN (SELECT orders.CustomerID FROM retail WHERE orders.Status = 'Shipped')"),
    ("retail", "What is the average discount given on Furniture products?",
     "SELECT avg(T2.Discount) FROM products AS T1 JOIN order_items AS T2 ON T1.ProductID = T2.ProductID WHERE T1.Category = 'Furniture'",
     "SELECT AVG(order_items.Discount) FROM retail WHERE products.Category = 'Furniture'"),
    # single-table items; the last one is a self-join
    ("concert_singer", "How many singers are there?", "SELECT count(*) FROM singer", None),
    ("concert_singer", "List stadium names with capacity over 5000.", "SELECT Name FROM stadium WHERE Capacity > 5000", None),
    ("college", "What is the average instructor salary?", "SELECT avg(salary) FROM instructor", None),
    ("retail", "List product names by price.", "SELECT `Product Name` FROM products ORDER BY Price", None),
    ("college", "Find pairs of instructors in the same department.",
     "SELECT a.name, b.name FROM instructor AS a JOIN instructor AS b ON a.dept_id = b.dept_id WHERE a.id < b.id", None),
]


def main():
    conns = {}
    dev, simplified = [], {}
    for index, (db_id, question, gold, simple) in enumerate(ITEMS):
        conn = conns.setdefault(db_id, connect(db_id))
        rows = conn.execute(gold).fetchall()
        if not rows:
            print(f"note: empty result for item {index}")
        dev.append({"db_id": db_id, "question": question, "query": gold})
        if simple is not None:
            simplified[f"{db_id}:{index}"] = simple
    (FIXTURES / "spider_mini" / "dev.json").write_text(json.dumps(dev, indent=1) + "\n")
    (FIXTURES / "oracle_simplified.json").write_text(json.dumps(simplified, indent=1, sort_keys=True) + "\n")
    print(f"{len(dev)} items, {len(simplified)} with simplified gold")


if __name__ == "__main__":
    main()
